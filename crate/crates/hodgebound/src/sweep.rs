//! Seeded generation of random spec families and batch verification.

use hodgebound_core::arith::{FieldDesc, FieldElement};
use hodgebound_core::character::{
    analyze_points, euler_poincare_degree, omega_exact, CharacterSpec, Point, RamificationDatum, RationalFunction,
    TameSpec,
};
use hodgebound_core::lfunction::GUARD;
use hodgebound_core::Rational;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{verify_report, JobConfig, VerifyFlags};
use crate::ledger::SumLedger;
use crate::specfile::{canonical_toml, spec_hash};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TameMode {
    /// Purely wild characters.
    Off,
    /// About half the specs get a tame part, a few are purely tame.
    Mixed,
}

/// Ranges a random family is drawn from.
#[derive(Clone, Debug)]
pub struct Family {
    pub count: usize,
    pub primes: Vec<u32>,
    /// Largest field size q = p^a.
    pub max_q: u64,
    pub max_n: usize,
    /// Largest Swan conductor at any point.
    pub max_swan: u64,
    pub tame: TameMode,
    /// Per-field enumeration budget; specs needing more are redrawn.
    pub budget: u128,
}

impl Default for Family {
    fn default() -> Self {
        Family {
            count: 50,
            primes: vec![3, 5],
            max_q: 25,
            max_n: 2,
            max_swan: 8,
            tame: TameMode::Mixed,
            budget: 2_000_000,
        }
    }
}

/// Draws after which a family gives up on a slot.
const MAX_DRAWS: usize = 10_000;

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    fn element(&mut self, k: &FieldDesc) -> FieldElement {
        k.from_index(self.below(k.order() as u64) as u128)
    }

    fn nonzero(&mut self, k: &FieldDesc) -> FieldElement {
        k.from_index(1 + self.below(k.order() as u64 - 1) as u128)
    }
}

fn poly_mul(k: &FieldDesc, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    out
}

fn linear_power(k: &FieldDesc, c: &FieldElement, e: u64) -> Vec<FieldElement> {
    let factor = [k.neg(c), k.one()];
    (0..e).fold(vec![k.one()], |acc, _| poly_mul(k, &acc, &factor))
}

/// A Witt coordinate with poles of random order at `points`.
fn wild_coordinate(d: &mut Draw, k: &FieldDesc, points: &[Point], max_pole: u64) -> RationalFunction {
    let mut den = vec![k.one()];
    let mut inf_order = 0;
    for q in points {
        let e = d.range(1, max_pole);
        match q {
            Point::Infinity => inf_order = e,
            Point::Finite(c) => den = poly_mul(k, &den, &linear_power(k, c, e)),
        }
    }
    let deg = den.len() - 1 + inf_order as usize;
    let mut num: Vec<FieldElement> = (0..=deg).map(|_| d.element(k)).collect();
    if inf_order > 0 {
        num[deg] = d.nonzero(k);
    }
    RationalFunction::new(num, den).expect("monic denominator")
}

fn tame_part(d: &mut Draw, k: &FieldDesc) -> TameSpec {
    let q = k.order() as u64;
    let roots = d.range(1, 3.min(q));
    let mut chosen: Vec<FieldElement> = Vec::new();
    while (chosen.len() as u64) < roots {
        let c = d.element(k);
        if !chosen.contains(&c) {
            chosen.push(c);
        }
    }
    let mut num = vec![d.nonzero(k)];
    let mut den = vec![k.one()];
    for c in &chosen {
        let e = d.range(1, 2);
        if d.chance(1, 4) {
            den = poly_mul(k, &den, &linear_power(k, c, e));
        } else {
            num = poly_mul(k, &num, &linear_power(k, c, e));
        }
    }
    TameSpec {
        f: RationalFunction::new(num, den).expect("monic denominator"),
        gamma: d.range(1, q - 2),
    }
}

fn draw_spec(d: &mut Draw, family: &Family, slot: u64) -> Option<CharacterSpec> {
    let p = family.primes[d.below(family.primes.len() as u64) as usize];
    let degrees: Vec<usize> = (1..=4).filter(|&a| (p as u64).pow(a as u32) <= family.max_q).collect();
    let a = *degrees.get(d.below(degrees.len().max(1) as u64) as usize)?;
    let k = FieldDesc::random(p, a, slot).ok()?;
    let n = d.range(1, family.max_n as u64) as usize;
    let tame = family.tame == TameMode::Mixed && d.chance(1, 2);
    let pure_tame = tame && d.chance(1, 5);
    let mut wild = Vec::with_capacity(n);
    for level in 0..n {
        if pure_tame || (level > 0 && d.chance(1, 3)) {
            wild.push(RationalFunction::zero(&k));
            continue;
        }
        let mut points = Vec::new();
        if d.chance(2, 3) {
            points.push(Point::Infinity);
        }
        if points.is_empty() || d.chance(1, 3) {
            points.push(Point::Finite(d.element(&k)));
        }
        let max_pole = (family.max_swan / p.pow(level as u32) as u64).clamp(1, 8);
        wild.push(wild_coordinate(d, &k, &points, max_pole));
    }
    let tame = tame.then(|| tame_part(d, &k));
    CharacterSpec::new(k, n, 0, wild, tame).ok()
}

/// Positive degree and enumeration cost q^{D + GUARD} within budget.
fn fits(spec: &CharacterSpec, data: &[RamificationDatum], family: &Family) -> bool {
    let Ok(deg) = euler_poincare_degree(0, data) else { return false };
    if deg == 0 {
        return false;
    }
    let Some(cost) = (spec.q() as u128).checked_pow(deg as u32 + GUARD as u32) else { return false };
    cost <= family.budget && data.iter().all(|d| d.swan <= family.max_swan)
}

/// `family.count` specs drawn deterministically from `seed`.
pub fn generate(family: &Family, seed: u64) -> Vec<CharacterSpec> {
    let mut d = Draw {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut out = Vec::with_capacity(family.count);
    for slot in 0..family.count as u64 {
        for _ in 0..MAX_DRAWS {
            let Some(spec) = draw_spec(&mut d, family, seed.wrapping_add(slot)) else { continue };
            let Ok(points) = analyze_points(&spec) else { continue };
            let data: Vec<RamificationDatum> = points.into_iter().map(|a| a.datum).collect();
            if fits(&spec, &data, family) {
                out.push(spec);
                break;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    /// A checked property failed.
    Fail(String),
    /// The job stopped with an error; the code is its exit code.
    Error(i32, String),
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub index: usize,
    pub spec_hash: String,
    pub spec: String,
    pub p: u64,
    pub a: usize,
    pub n: usize,
    pub degree: Option<i64>,
    pub omega: Option<Rational>,
    pub min_margin: Option<Rational>,
    pub theorem: Option<bool>,
    pub degree_match: Option<bool>,
    pub endpoints_match: Option<bool>,
    pub duality: Option<bool>,
    pub remark_matches: Option<bool>,
    pub status: RowStatus,
}

impl SweepRow {
    pub fn omega_integral(&self) -> Option<bool> {
        self.omega.map(|w| w.is_integer() && w >= Rational::from_integer(0))
    }
}

pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

fn run_one(index: usize, spec: &CharacterSpec, cfg: &JobConfig, ledger: &SumLedger, flags: &VerifyFlags) -> SweepRow {
    let mut row = SweepRow {
        index,
        spec_hash: spec_hash(spec),
        spec: canonical_toml(spec),
        p: spec.p(),
        a: spec.a(),
        n: spec.n(),
        degree: None,
        omega: None,
        min_margin: None,
        theorem: None,
        degree_match: None,
        endpoints_match: None,
        duality: None,
        remark_matches: None,
        status: RowStatus::Pass,
    };
    if let Ok(points) = analyze_points(spec) {
        let data: Vec<RamificationDatum> = points.into_iter().map(|a| a.datum).collect();
        row.omega = Some(omega_exact(&data, spec.p(), spec.a()));
        row.degree = euler_poincare_degree(spec.genus(), &data).ok();
    }
    match verify_report(spec, cfg, ledger, flags) {
        Ok(r) => {
            row.min_margin = Some(r.theorem.min_margin);
            row.theorem = Some(r.theorem.holds);
            row.degree_match = Some(r.degree_match);
            row.endpoints_match = Some(r.endpoints_match);
            row.duality = r.duality.as_ref().map(|d| d.np_dual && d.hp_dual);
            row.remark_matches = Some(r.remark_matches);
            if !r.all_hold() {
                let mut failed = Vec::new();
                for (ok, name) in [
                    (r.theorem.holds, "newton-over-hodge"),
                    (r.endpoints_match, "endpoints"),
                    (r.slopes_in_unit_interval, "unit-interval"),
                    (r.degree_match, "degree"),
                    (row.duality != Some(false), "duality"),
                ] {
                    if !ok {
                        failed.push(name);
                    }
                }
                row.status = RowStatus::Fail(failed.join(","));
            }
        }
        Err(e) => {
            let code = e.exit_code();
            row.status = if code == 1 {
                RowStatus::Fail(e.to_string())
            } else {
                RowStatus::Error(code, e.to_string())
            };
        }
    }
    row
}

/// Verifies every spec on the current rayon pool; rows keep input order.
pub fn run(specs: &[CharacterSpec], cfg: &JobConfig, ledger: &SumLedger, flags: &VerifyFlags) -> SweepResult {
    let rows = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| run_one(i, spec, cfg, ledger, flags))
        .collect();
    SweepResult { rows }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

impl SweepResult {
    pub const HEADER: &'static str =
        "index\tspec_hash\tp\ta\tn\tdegree\tomega\tmin_margin\ttheorem\tdegree_match\tendpoints\tduality\tremark_endpoint\tstatus";

    pub fn summary_tsv(&self) -> String {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for r in &self.rows {
            let status = match &r.status {
                RowStatus::Pass => "pass".to_string(),
                RowStatus::Fail(_) => "fail".to_string(),
                RowStatus::Error(code, _) => format!("error{code}"),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.index,
                r.spec_hash,
                r.p,
                r.a,
                r.n,
                opt(&r.degree),
                opt(&r.omega),
                opt(&r.min_margin),
                opt(&r.theorem),
                opt(&r.degree_match),
                opt(&r.endpoints_match),
                opt(&r.duality),
                opt(&r.remark_matches),
                status
            ));
        }
        out
    }

    /// Every row that did not pass, with its canonical spec.
    pub fn failures(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .filter_map(|r| {
                    let (kind, reason, code) = match &r.status {
                        RowStatus::Pass => return None,
                        RowStatus::Fail(m) => ("fail", m.as_str(), 1),
                        RowStatus::Error(c, m) => ("error", m.as_str(), *c),
                    };
                    Some(json!({
                        "index": r.index,
                        "spec_hash": r.spec_hash,
                        "kind": kind,
                        "exit_code": code,
                        "reason": reason,
                        "spec": r.spec,
                    }))
                })
                .collect(),
        )
    }

    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Pass).count()
    }

    /// 1 if any property failed, else the largest error code, else 0.
    pub fn exit_code(&self) -> i32 {
        let mut code = 0;
        for r in &self.rows {
            match r.status {
                RowStatus::Pass => {}
                RowStatus::Fail(_) => return 1,
                RowStatus::Error(c, _) => code = code.max(c),
            }
        }
        code
    }
}
