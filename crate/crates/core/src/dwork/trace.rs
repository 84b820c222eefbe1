//! The trace-formula congruence det(1 − sU) ≡ L(ρ, G_m, s) det(1 − psU)
//! and the column-growth scan of U_p ∘ α.

use alloc::format;
use alloc::vec::Vec;

use super::operator::{fredholm_series, series_mul, twisted_multiplier, up_matrix, FredholmSeries, UpMatrix};
use super::splitting::{splitting_series, terms_swan};
use crate::arith::{WittSeries, WittSeriesRing};
use crate::character::{analyze_points, decompose_global, CharacterSpec, Point, WittTerm};
use crate::cyclotomic::{CycloInt, CycloPadic, PadicRing, PadicValuation};
use crate::lfunction::{frobenius_value_at, l_polynomial, newton_polygon_of_l, sum_ring, LPolynomial, DEFAULT_BUDGET};
use crate::polygon::RationalPolygon;
use crate::{Error, Rational, Result};

/// ρ rewritten in the coordinate z with the wild point at z = 0.
#[derive(Clone, Debug)]
pub struct DworkSetup {
    /// The point z = 0.
    pub wild_point: Point,
    /// Terms V^i[c z^e], e ≤ 0.
    pub terms: Vec<WittTerm>,
    /// Tame exponent ε at z = 0, in [0, p − 2].
    pub epsilon: u64,
    /// Exponent j of the constant ζ_{p−1}^j = [c_f]^{−Γ}.
    pub tame_constant: i64,
    pub swan: u64,
}

fn unsupported(msg: &str) -> Error {
    Error::Unsupported(format!("trace-formula check: {msg}"))
}

/// Checks the restrictions (q = p, n ≤ 2, P^1, ramification in {0, ∞},
/// wild at one of them, f = c t^m) and rewrites ρ in z.
pub fn dwork_setup(spec: &CharacterSpec) -> Result<DworkSetup> {
    if spec.a() != 1 {
        return Err(unsupported("needs q = p"));
    }
    if spec.n() > 2 {
        return Err(unsupported("needs n <= 2"));
    }
    if spec.genus() != 0 {
        return Err(unsupported("needs X = P^1"));
    }
    let k = spec.field();
    let zero = Point::Finite(k.zero());
    if spec.special_points()?.iter().any(|q| *q != zero && *q != Point::Infinity) {
        return Err(unsupported("special points must lie in {0, oo}"));
    }
    let coords = spec
        .wild()
        .iter()
        .map(|r| r.as_laurent(k))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| unsupported("wild coordinates must be Laurent polynomials"))?;
    let ring = WittSeriesRing::new(k, spec.n())?;
    let terms = decompose_global(&ring, &WittSeries { coords })?;
    let at_zero = terms.iter().any(|t| t.exponent < 0);
    let at_inf = terms.iter().any(|t| t.exponent > 0);
    if at_zero && at_inf {
        return Err(unsupported("wild ramification at both 0 and oo"));
    }
    let (wild_point, sign) = if at_inf { (Point::Infinity, -1) } else { (zero, 1) };
    let terms: Vec<WittTerm> = terms
        .into_iter()
        .map(|t| WittTerm {
            exponent: sign * t.exponent,
            ..t
        })
        .collect();
    let p = spec.p();
    let (epsilon, tame_constant) = match spec.tame() {
        None => (0, 0),
        Some(t) => {
            let f = t
                .f
                .as_laurent(k)
                .filter(|s| s.terms(k).count() == 1)
                .ok_or_else(|| unsupported("tame function must be c t^m"))?;
            let (m, c) = f.terms(k).next().map(|(m, c)| (m, c.clone())).expect("one term");
            let gamma = spec.gamma() as i64;
            let eps = (gamma * sign * m).rem_euclid(p as i64 - 1) as u64;
            let log = spec.dlog_table()[k.index(&c) as usize] as i64;
            (eps, -gamma * log)
        }
    };
    let swan = terms_swan(&terms, p, spec.n());
    if let Some(a) = analyze_points(spec)?.into_iter().find(|a| a.datum.point == wild_point) {
        if a.datum.swan != swan || a.datum.eps != epsilon {
            return Err(Error::invariant(format!(
                "z-coordinate data (s = {swan}, eps = {epsilon}) disagree with the local analysis \
                 (s = {}, eps = {})",
                a.datum.swan, a.datum.eps
            )));
        }
    }
    Ok(DworkSetup {
        wild_point,
        terms,
        epsilon,
        tame_constant,
        swan,
    })
}

/// α through z^{−(len−1)}.
pub fn frobenius_multiplier(setup: &DworkSetup, ring: &PadicRing, len: usize) -> Result<Vec<CycloPadic>> {
    let shift = setup.epsilon as usize;
    let e_r = splitting_series(ring, &setup.terms, len.saturating_sub(shift))?;
    let unit = ring.tame_root_power(setup.tame_constant);
    Ok(twisted_multiplier(ring, &e_r, &unit, shift))
}

#[derive(Clone, Debug)]
pub struct DworkOptions {
    /// Matrix size T.
    pub size: usize,
    /// p-adic digits M.
    pub digits: u32,
    /// Compare through s^d.
    pub s_degree: usize,
    pub budget: u128,
}

impl Default for DworkOptions {
    fn default() -> Self {
        DworkOptions {
            size: 60,
            digits: 12,
            s_degree: 3,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// L(ρ, G_m, s): L(ρ, s) times (1 − ρ(Frob_Q) s) for Q ∈ {0, ∞} unramified.
pub fn l_on_torus(spec: &CharacterSpec, budget: u128) -> Result<LPolynomial> {
    let mut l = l_polynomial(spec, budget)?;
    let ring = sum_ring(spec)?;
    for q in [Point::Finite(spec.field().zero()), Point::Infinity] {
        if let Some(f) = frobenius_value_at(spec, &q)? {
            let lambda = ring.neg(&ring.root_of_unity(f.wild as i64, f.tame as i64));
            let mut next: Vec<CycloInt> = l.coeffs.clone();
            next.push(ring.zero());
            for i in 1..next.len() {
                next[i] = ring.add(&next[i], &ring.mul(&lambda, &l.coeffs[i - 1]));
            }
            l.coeffs = next;
            l.degree += 1;
        }
    }
    Ok(l)
}

#[derive(Clone, Debug)]
pub struct TraceFormulaReport {
    pub ring: PadicRing,
    /// det(1 − sU) through s^d.
    pub lhs: Vec<CycloPadic>,
    /// L(ρ, G_m, s) · det(1 − psU) through s^d.
    pub rhs: Vec<CycloPadic>,
    /// L(ρ, G_m, s) mod p^M.
    pub l_coeffs: Vec<CycloPadic>,
    /// Digits to which both sides are known and compared.
    pub precision: u32,
    pub congruent: bool,
    /// NP_p(det(1 − sU)) below slope 1.
    pub np_fredholm: RationalPolygon,
    /// NP_q(L(ρ, G_m, s)) below slope 1.
    pub np_l: RationalPolygon,
    pub np_match: bool,
}

impl TraceFormulaReport {
    pub fn holds(&self) -> bool {
        self.congruent && self.np_match
    }
}

fn matrices(spec: &CharacterSpec, opts: &DworkOptions) -> Result<(PadicRing, DworkSetup, UpMatrix, UpMatrix)> {
    let setup = dwork_setup(spec)?;
    let ring = PadicRing::new(spec.field(), spec.n() as u32, opts.digits, spec.generator())?;
    let p = spec.p() as usize;
    let big = opts.size + p;
    let alpha = frobenius_multiplier(&setup, &ring, p * (big - 1) + 1)?;
    let small = up_matrix(&ring, &alpha, opts.size)?;
    let large = up_matrix(&ring, &alpha, big)?;
    Ok((ring, setup, small, large))
}

/// det(1 − sU) at size T, certified against size T + p.
fn stable_fredholm(ring: &PadicRing, small: &UpMatrix, large: &UpMatrix, d: usize) -> Result<FredholmSeries> {
    let a = fredholm_series(ring, small, d)?;
    let b = fredholm_series(ring, large, d)?;
    let digits = a.digits.min(b.digits);
    for (i, (x, y)) in a.coeffs.iter().zip(&b.coeffs).enumerate() {
        if !ring.congruent(x, y, digits) {
            return Err(Error::Convergence(format!(
                "coefficient {i} of det(1 - sU) changes between sizes {} and {}",
                small.size, large.size
            )));
        }
    }
    Ok(FredholmSeries { digits, ..a })
}

/// Lower hull of the coefficient valuations, certified for its part below
/// slope 1: a coefficient known only to vanish mod p^M must lie on or above
/// the hull, or past its end at slope ≥ 1.
fn padic_hull(ring: &PadicRing, coeffs: &[CycloPadic]) -> Result<RationalPolygon> {
    let vals: Vec<PadicValuation> = coeffs.iter().map(|c| ring.valuation(c)).collect();
    let pts: Vec<(Rational, Option<Rational>)> = vals
        .iter()
        .enumerate()
        .map(|(i, v)| (Rational::from_integer(i as i64), v.finite()))
        .collect();
    let hull = RationalPolygon::lower_hull(&pts)?;
    let (ex, ey) = hull.endpoint();
    for (i, v) in vals.iter().enumerate() {
        if let PadicValuation::AtLeast(b) = v {
            let x = Rational::from_integer(i as i64);
            let certified = match hull.eval(x) {
                Some(h) => *b >= h,
                None => *b - ey >= x - ex,
            };
            if !certified {
                return Err(Error::Precision(format!(
                    "coefficient {i} of det(1 - sU) vanishes to the working precision"
                )));
            }
        }
    }
    Ok(hull)
}

/// Verifies det(1 − sU) ≡ L(ρ, G_m, s) det(1 − psU) mod (p^{M'}, s^{d+1})
/// and compares the Newton polygons below slope 1.
pub fn trace_formula_check(spec: &CharacterSpec, opts: &DworkOptions) -> Result<TraceFormulaReport> {
    let (ring, _, small, large) = matrices(spec, opts)?;
    let d = opts.s_degree;
    let det = stable_fredholm(&ring, &small, &large, d)?;
    let precision = det.digits;
    let l = l_on_torus(spec, opts.budget)?;
    let l_coeffs: Vec<CycloPadic> = l
        .coeffs
        .iter()
        .map(|c| ring.from_exact(&l.ring, c))
        .collect::<Result<_>>()?;
    let p = ring.from_int(spec.p() as i64);
    let mut scaled = Vec::with_capacity(d + 1);
    let mut pk = ring.one();
    for c in &det.coeffs {
        scaled.push(ring.mul(c, &pk));
        pk = ring.mul(&pk, &p);
    }
    let rhs: Vec<CycloPadic> = series_mul(&ring, &l_coeffs, &scaled, d + 1)
        .iter()
        .map(|c| ring.truncate_digits(c, precision))
        .collect();
    let congruent = det
        .coeffs
        .iter()
        .zip(&rhs)
        .all(|(x, y)| ring.congruent(x, y, precision));
    let one = Rational::from_integer(1);
    let np_l = newton_polygon_of_l(spec, &l)?.truncate_below(one);
    if np_l.length() > Rational::from_integer(d as i64) {
        return Err(Error::input(format!(
            "slope < 1 part of L has length {} > s-degree {d}",
            np_l.length()
        )));
    }
    let np_fredholm = padic_hull(&ring, &det.coeffs)?.truncate_below(one);
    Ok(TraceFormulaReport {
        np_match: np_fredholm == np_l,
        lhs: det.coeffs,
        rhs,
        l_coeffs,
        precision,
        congruent,
        np_fredholm,
        np_l,
        ring,
    })
}

/// An entry of U_p ∘ α below its claimed lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthViolation {
    pub row: usize,
    pub column: usize,
    pub valuation: Rational,
    pub bound: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct GrowthScan {
    pub swan: u64,
    pub omega: u64,
    pub columns: usize,
    pub entries_checked: usize,
    /// Entries that vanish mod p^M with M below the bound.
    pub inconclusive: usize,
    pub violations: Vec<GrowthViolation>,
}

impl GrowthScan {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans entry (k, j), k ≥ 1, of U_p ∘ α against
/// v_p ≥ (pk − j − ω) / (s(p − 1)): the image of π_s^{pj − ω} z^{−j} lies in
/// π_s^{j(p−1)} π_s^{−ω} D_{ε,s}, where D_{ε,s} has basis π_s^{pk − ω} z^{−k}
/// for k ≥ 1. With s = 0 the entries for pk > j + ω must vanish.
pub fn growth_scan(spec: &CharacterSpec, opts: &DworkOptions) -> Result<GrowthScan> {
    let (ring, setup, m, _) = matrices(spec, opts)?;
    let p = spec.p() as i64;
    let (s, omega) = (setup.swan as i64, setup.epsilon as i64);
    let mut scan = GrowthScan {
        swan: setup.swan,
        omega: setup.epsilon,
        columns: m.size,
        entries_checked: 0,
        inconclusive: 0,
        violations: Vec::new(),
    };
    for j in 0..m.size {
        for k in 1..m.size {
            let excess = p * k as i64 - j as i64 - omega;
            let bound = (s > 0).then(|| Rational::new(excess, s * (p - 1)));
            scan.entries_checked += 1;
            match (ring.valuation(m.get(k, j)), bound) {
                (PadicValuation::Finite(v), Some(b)) if v < b => {
                    scan.violations.push(GrowthViolation { row: k, column: j, valuation: v, bound })
                }
                (PadicValuation::Finite(v), None) if excess > 0 => {
                    scan.violations.push(GrowthViolation { row: k, column: j, valuation: v, bound })
                }
                (PadicValuation::AtLeast(v), Some(b)) if v < b => scan.inconclusive += 1,
                _ => {}
            }
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;
    use crate::character::{RationalFunction, TameSpec};
    use alloc::vec;

    fn poly(k: &FieldDesc, c: &[i64]) -> RationalFunction {
        RationalFunction::polynomial(k, c.iter().map(|&v| k.from_int(v)).collect())
    }

    #[test]
    fn gauss_sum_congruence() {
        let k = FieldDesc::prime_field(3).unwrap();
        let spec = CharacterSpec::new(
            k.clone(),
            1,
            0,
            vec![poly(&k, &[0, 1])],
            Some(TameSpec { f: poly(&k, &[0, 1]), gamma: 1 }),
        )
        .unwrap();
        let r = trace_formula_check(&spec, &DworkOptions::default()).unwrap();
        assert!(r.precision >= 8);
        assert!(r.congruent, "{:?}\n{:?}", r.lhs, r.rhs);
        assert!(r.np_match, "{:?} vs {:?}", r.np_fredholm, r.np_l);
    }

    #[test]
    fn artin_schreier_square_congruence() {
        let k = FieldDesc::prime_field(3).unwrap();
        let spec = CharacterSpec::new(k.clone(), 1, 0, vec![poly(&k, &[0, 0, 1])], None).unwrap();
        let r = trace_formula_check(&spec, &DworkOptions::default()).unwrap();
        assert!(r.congruent && r.np_match);
        assert!(growth_scan(&spec, &DworkOptions::default()).unwrap().holds());
    }
}
