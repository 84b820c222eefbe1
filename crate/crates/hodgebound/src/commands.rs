//! One function per subcommand. Each returns a JSON report, polygon tables
//! and whether every asserted property held.

use std::cell::RefCell;
use std::str::FromStr;

use hodgebound_core::character::{
    analyze_points, euler_poincare_degree, hodge_segments, omega_exact, remark_endpoint, CharacterSpec,
    RamificationDatum,
};
use hodgebound_core::dwork::{growth_scan, trace_formula_check, DworkOptions};
use hodgebound_core::lfunction::cover::{
    character_product, corollary_polygon, cover_breaks, cover_point_count, integer_newton_polygon,
    zeta_numerator_from_counts,
};
use hodgebound_core::lfunction::{newton_polygon_of_l, verify_newton_over_hodge_with, VerifyOptions};
use hodgebound_core::polygon::RationalPolygon;
use hodgebound_core::{Error, Rational};
use serde_json::{json, Value};

use crate::ledger::SumLedger;
use crate::report;
use crate::specfile::{canonical_toml, spec_hash};
use crate::{AppError, AppResult};

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub budget: u128,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    /// (file name, contents) of polygon tables.
    pub tables: Vec<(String, String)>,
    pub holds: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }
}

fn header(command: &str, spec: &CharacterSpec, cfg: &JobConfig) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("spec_hash".into(), json!(spec_hash(spec)));
    m.insert("spec".into(), json!(canonical_toml(spec)));
    m.insert(
        "field".into(),
        json!({ "p": spec.p(), "a": spec.a(), "q": spec.q(), "modulus": spec.field().modulus() }),
    );
    m.insert("n".into(), json!(spec.n()));
    m.insert("genus".into(), json!(spec.genus()));
    m
}

fn finish(mut head: serde_json::Map<String, Value>, body: Value, tables: Vec<(String, String)>, holds: bool) -> Outcome {
    head.insert("holds".into(), json!(holds));
    if let Value::Object(b) = body {
        head.extend(b);
    }
    Outcome {
        report: Value::Object(head),
        tables,
        holds,
    }
}

fn data_of(spec: &CharacterSpec) -> AppResult<Vec<RamificationDatum>> {
    Ok(analyze_points(spec)?.into_iter().map(|a| a.datum).collect())
}

/// Ramification data, degree and Ω.
pub fn invariants(spec: &CharacterSpec, cfg: &JobConfig) -> AppResult<Outcome> {
    let points = analyze_points(spec)?;
    let data: Vec<RamificationDatum> = points.iter().map(|a| a.datum.clone()).collect();
    let omega = omega_exact(&data, spec.p(), spec.a());
    let body = json!({
        "points": points.iter().map(|a| {
            let mut v = report::datum(&a.datum);
            v["ramified"] = json!(a.datum.is_ramified());
            v["frobenius"] = match a.frobenius {
                Some(f) => json!({ "wild": f.wild, "tame": f.tame }),
                None => Value::Null,
            };
            v
        }).collect::<Vec<_>>(),
        "euler_poincare_degree": euler_poincare_degree(spec.genus(), &data)?,
        "remark_endpoint": remark_endpoint(spec.genus(), &data),
        "omega": report::rational(&omega),
        "omega_integral": omega.is_integer(),
    });
    Ok(finish(header("invariants", spec, cfg), body, Vec::new(), true))
}

pub fn hodge(spec: &CharacterSpec, cfg: &JobConfig) -> AppResult<Outcome> {
    let data = data_of(spec)?;
    let segments = hodge_segments(spec.genus(), &data, spec.p(), spec.a())?;
    let hp = RationalPolygon::from_slopes(&segments)?;
    let omega = omega_exact(&data, spec.p(), spec.a());
    let body = json!({
        "hp": report::polygon(&hp),
        "omega": report::rational(&omega),
        "omega_integral": omega.is_integer(),
        "ramification": data.iter().filter(|d| d.is_ramified()).map(report::datum).collect::<Vec<_>>(),
    });
    let tables = vec![("hp.tsv".into(), report::polygon_tsv(&hp))];
    Ok(finish(header("hodge", spec, cfg), body, tables, true))
}

pub fn lfunction(spec: &CharacterSpec, cfg: &JobConfig, ledger: &SumLedger) -> AppResult<Outcome> {
    let l = ledger.l_polynomial(spec, cfg.budget)?;
    let np = newton_polygon_of_l(spec, &l)?;
    let body = json!({ "l": report::l_polynomial(&l), "np": report::polygon(&np) });
    let tables = vec![("np.tsv".into(), report::polygon_tsv(&np))];
    Ok(finish(header("lfunction", spec, cfg), body, tables, true))
}

/// Parses a slope list such as `1/2,1/2,1`.
pub fn parse_slopes(text: &str) -> AppResult<Vec<Rational>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Rational::from_str(s).map_err(|_| AppError::Config(format!("bad slope {s:?}"))))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct VerifyFlags {
    /// Replaces the computed Hodge polygon.
    pub hodge_slopes: Option<Vec<Rational>>,
    pub skip_duality: bool,
}

/// Runs the Newton-over-Hodge check with L-polynomials from the ledger.
pub fn verify_report(
    spec: &CharacterSpec,
    cfg: &JobConfig,
    ledger: &SumLedger,
    flags: &VerifyFlags,
) -> AppResult<hodgebound_core::lfunction::VerificationReport> {
    let opts = VerifyOptions {
        budget: cfg.budget,
        check_duality: !flags.skip_duality,
        hodge_override: flags.hodge_slopes.as_deref().map(RationalPolygon::from_slope_multiset),
    };
    // Ledger IO errors cannot cross the core callback; park them here.
    let side = RefCell::new(None);
    let result = verify_newton_over_hodge_with(spec, &opts, |s| match ledger.l_polynomial(s, cfg.budget) {
        Ok(l) => Ok(l),
        Err(AppError::Core(e)) => Err(e),
        Err(other) => {
            *side.borrow_mut() = Some(other);
            Err(Error::InvalidInput("cache failure".into()))
        }
    });
    if let Some(e) = side.into_inner() {
        return Err(e);
    }
    Ok(result?)
}

pub fn verify(spec: &CharacterSpec, cfg: &JobConfig, ledger: &SumLedger, flags: &VerifyFlags) -> AppResult<Outcome> {
    let r = verify_report(spec, cfg, ledger, flags)?;
    let body = json!({
        "hodge_override": flags.hodge_slopes.is_some(),
        "report": report::verification(&r),
    });
    let tables = vec![
        ("np.tsv".into(), report::polygon_tsv(&r.np)),
        ("hp.tsv".into(), report::polygon_tsv(&r.hp)),
    ];
    Ok(finish(header("verify", spec, cfg), body, tables, r.all_hold()))
}

/// The lower bound for NP of the cover from its breaks, against the product
/// of L(ρ^j, s) over the nontrivial powers and, optionally, against point
/// counts of the cover itself.
pub fn cover(spec: &CharacterSpec, cfg: &JobConfig, point_counts: bool) -> AppResult<Outcome> {
    if spec.genus() != 0 {
        return Err(Error::Unsupported("cover bounds are computed over P^1 only".into()).into());
    }
    let breaks = cover_breaks(spec)?;
    let bound = corollary_polygon(&breaks, &[])?;
    let product = character_product(spec, cfg.budget)?;
    let np = integer_newton_polygon(&product, spec.p(), spec.a())?;
    let theorem = np.lies_above(&bound);
    let endpoints_match = np.endpoint() == bound.endpoint();
    let mut holds = theorem.holds && endpoints_match;
    let genus_c = (product.len() - 1) / 2;
    let zeta = if point_counts {
        let needed = (spec.q() as u128).saturating_pow(genus_c as u32);
        if needed > cfg.budget {
            return Err(Error::Budget { needed, budget: cfg.budget }.into());
        }
        let counts = (1..=genus_c)
            .map(|k| cover_point_count(spec, k))
            .collect::<Result<Vec<_>, _>>()?;
        let numerator = zeta_numerator_from_counts(spec.q(), genus_c, &counts)?;
        let matches = numerator == product;
        holds &= matches;
        Some(json!({
            "counts": counts,
            "numerator": numerator.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "matches_product": matches,
        }))
    } else {
        None
    };
    let body = json!({
        "breaks": breaks.points.iter().map(|pt| json!({
            "point": pt.point.as_ref().map(report::point),
            "breaks": pt.breaks,
        })).collect::<Vec<_>>(),
        "cover_genus": genus_c,
        "omega": breaks.omega(),
        "bound": report::polygon(&bound),
        "product": product.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "np": report::polygon(&np),
        "theorem": report::domination(&theorem),
        "endpoints_match": endpoints_match,
        "zeta": zeta,
    });
    let tables = vec![
        ("np.tsv".into(), report::polygon_tsv(&np)),
        ("bound.tsv".into(), report::polygon_tsv(&bound)),
    ];
    Ok(finish(header("cover", spec, cfg), body, tables, holds))
}

/// The Dwork trace formula congruence and the growth scan of U_p ∘ α.
pub fn dwork_check(spec: &CharacterSpec, cfg: &JobConfig, opts: &DworkOptions) -> AppResult<Outcome> {
    let opts = DworkOptions {
        budget: cfg.budget,
        ..opts.clone()
    };
    let trace = trace_formula_check(spec, &opts)?;
    let growth = growth_scan(spec, &opts)?;
    let holds = trace.holds() && growth.holds();
    let mut body = report::trace_formula(&trace);
    body["size"] = json!(opts.size);
    body["digits"] = json!(opts.digits);
    body["s_degree"] = json!(opts.s_degree);
    body["growth"] = report::growth(&growth);
    body.as_object_mut().expect("object").remove("holds");
    let tables = vec![
        ("np_fredholm.tsv".into(), report::polygon_tsv(&trace.np_fredholm)),
        ("np_l.tsv".into(), report::polygon_tsv(&trace.np_l)),
    ];
    Ok(finish(header("dwork-check", spec, cfg), body, tables, holds))
}
