use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodgebound::commands::{self, JobConfig, Outcome, VerifyFlags};
use hodgebound::ledger::SumLedger;
use hodgebound::specfile::load_spec;
use hodgebound::sweep::{self, Family, TameMode};
use hodgebound::{AppError, AppResult};
use hodgebound_core::dwork::DworkOptions;
use hodgebound_core::lfunction::DEFAULT_BUDGET;

/// Abelian L-functions on P^1 over finite fields: Newton and Hodge
/// polygons, cover bounds and a Dwork trace formula cross-check.
///
/// Exit status: 0 all checks hold, 1 a checked property failed, 2 bad input
/// or configuration, 3 enumeration budget or p-adic precision exhausted.
/// Set HODGEBOUND_CACHE to a directory to persist character sums.
#[derive(Parser, Debug)]
#[command(name = "hodgebound", version)]
struct Cli {
    /// Directory for the report JSON and polygon tables.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest finite field enumerated, in elements.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sweep generation, recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ramification data, Euler-Poincare degree and Omega.
    Invariants { spec: PathBuf },
    /// The Hodge polygon.
    Hodge { spec: PathBuf },
    /// L(rho, s) and its Newton polygon.
    Lfunction { spec: PathBuf },
    /// Newton over Hodge, degree, endpoints and duality.
    Verify {
        spec: PathBuf,
        #[command(flatten)]
        flags: VerifyArgs,
    },
    /// Break bound for the cyclic cover defined by a purely wild character.
    Cover {
        spec: PathBuf,
        /// Also count points on the cover and compare zeta numerators.
        #[arg(long)]
        point_counts: bool,
    },
    /// Dwork trace formula congruence and growth scan (a = 1).
    DworkCheck {
        spec: PathBuf,
        /// Matrix size T.
        #[arg(long, default_value_t = 60)]
        size: usize,
        /// Working p-adic digits.
        #[arg(long, default_value_t = 12)]
        digits: u32,
        /// Compare coefficients through s^d.
        #[arg(long, default_value_t = 3)]
        s_degree: usize,
    },
    /// Verify a list of spec files and/or a random family.
    Sweep {
        /// Spec files verified before the random family.
        specs: Vec<PathBuf>,
        /// Random specs to draw; 50 when no files are given, else 0.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 5])]
        primes: Vec<u32>,
        #[arg(long, default_value_t = 25)]
        max_q: u64,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_swan: u64,
        /// Draw purely wild characters only.
        #[arg(long)]
        wild_only: bool,
        /// Skip the duality check.
        #[arg(long)]
        no_duality: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Replace the computed Hodge polygon by these slopes, e.g. 1/2,1/2.
    #[arg(long)]
    hodge_slopes: Option<String>,
    /// Skip the duality check against the inverse character.
    #[arg(long)]
    no_duality: bool,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> AppResult<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| AppError::io(path, e))
}

fn emit(out: Option<&Path>, name: &str, outcome: &Outcome) -> AppResult<()> {
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
        write_file(dir, &format!("{name}.json"), &text)?;
        for (file, body) in &outcome.tables {
            write_file(dir, file, body)?;
        }
    }
    print!("{text}");
    Ok(())
}

fn report_cache(ledger: &SumLedger) {
    let s = ledger.stats();
    eprintln!("cache: {} hits, {} misses", s.hits, s.misses);
}

fn run(cli: Cli) -> AppResult<i32> {
    if cli.budget == 0 {
        return Err(AppError::Config("--budget must be positive".into()));
    }
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(AppError::Config("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| AppError::Config(e.to_string()))?;
    }
    let cfg = JobConfig {
        budget: cli.budget,
        seed: cli.seed,
    };
    let out = cli.out.as_deref();
    let outcome = match cli.command {
        Command::Invariants { spec } => commands::invariants(&load_spec(&spec)?, &cfg)?,
        Command::Hodge { spec } => commands::hodge(&load_spec(&spec)?, &cfg)?,
        Command::Lfunction { spec } => {
            let ledger = SumLedger::from_env()?;
            let o = commands::lfunction(&load_spec(&spec)?, &cfg, &ledger)?;
            report_cache(&ledger);
            o
        }
        Command::Verify { spec, flags } => {
            let spec = load_spec(&spec)?;
            let flags = VerifyFlags {
                hodge_slopes: flags.hodge_slopes.as_deref().map(commands::parse_slopes).transpose()?,
                skip_duality: flags.no_duality,
            };
            let ledger = SumLedger::from_env()?;
            let o = commands::verify(&spec, &cfg, &ledger, &flags)?;
            report_cache(&ledger);
            o
        }
        Command::Cover { spec, point_counts } => commands::cover(&load_spec(&spec)?, &cfg, point_counts)?,
        Command::DworkCheck {
            spec,
            size,
            digits,
            s_degree,
        } => {
            let opts = DworkOptions {
                size,
                digits,
                s_degree,
                budget: cfg.budget,
            };
            commands::dwork_check(&load_spec(&spec)?, &cfg, &opts)?
        }
        Command::Sweep {
            specs,
            count,
            primes,
            max_q,
            max_n,
            max_swan,
            wild_only,
            no_duality,
        } => {
            let mut list = specs.iter().map(|p| load_spec(p)).collect::<AppResult<Vec<_>>>()?;
            let family = Family {
                count: count.unwrap_or(if specs.is_empty() { 50 } else { 0 }),
                primes,
                max_q,
                max_n,
                max_swan,
                tame: if wild_only { TameMode::Off } else { TameMode::Mixed },
                budget: cfg.budget,
            };
            if family.primes.is_empty() || family.max_n == 0 {
                return Err(AppError::Config("empty prime list or --max-n 0".into()));
            }
            list.extend(sweep::generate(&family, cfg.seed));
            let ledger = SumLedger::from_env()?;
            let flags = VerifyFlags {
                hodge_slopes: None,
                skip_duality: no_duality,
            };
            let result = sweep::run(&list, &cfg, &ledger, &flags);
            let summary = result.summary_tsv();
            if let Some(dir) = out {
                std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
                write_file(dir, "summary.tsv", &summary)?;
                let failures = serde_json::json!({
                    "seed": cfg.seed,
                    "specs": list.len(),
                    "passed": result.passed(),
                    "failures": result.failures(),
                });
                write_file(
                    dir,
                    "failures.json",
                    &(serde_json::to_string_pretty(&failures).expect("json") + "\n"),
                )?;
            }
            print!("{summary}");
            report_cache(&ledger);
            return Ok(result.exit_code());
        }
    };
    emit(out, &outcome_name(&outcome), &outcome)?;
    Ok(outcome.exit_code())
}

fn outcome_name(o: &Outcome) -> String {
    o.report["command"].as_str().unwrap_or("report").to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
