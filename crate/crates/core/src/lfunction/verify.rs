//! Newton-over-Hodge verification reports.

use alloc::vec::Vec;

use super::lpoly::{l_polynomial, newton_polygon_of_l, LPolynomial};
use crate::character::{hodge_polygon, omega_exact, remark_endpoint, CharacterSpec};
use crate::polygon::{DominationReport, RationalPolygon};
use crate::{Rational, Result};

/// Slopes α ↦ 1 − α.
pub fn dual_slopes(slopes: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = slopes.iter().map(|s| Rational::from_integer(1) - s).collect();
    out.sort();
    out
}

/// Whether two slope multisets pair up under α ↔ 1 − α.
pub fn are_dual(a: &[Rational], b: &[Rational]) -> bool {
    let mut b = b.to_vec();
    b.sort();
    dual_slopes(a) == b
}

/// Whether two polygons have slopes paired under α ↔ 1 − α with equal
/// lengths; segment lengths may be fractional.
pub fn are_dual_polygons(a: &RationalPolygon, b: &RationalPolygon) -> bool {
    a.dual() == *b
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub np_dual: bool,
    pub hp_dual: bool,
    pub np_inverse: RationalPolygon,
    pub hp_inverse: RationalPolygon,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub np: RationalPolygon,
    pub hp: RationalPolygon,
    /// NP ≥ HP on the common range.
    pub theorem: DominationReport,
    pub endpoints_match: bool,
    /// Every NP slope lies in [0, 1].
    pub slopes_in_unit_interval: bool,
    /// Euler–Poincaré degree 2(g − 1 + m) + Σ(s − 1).
    pub degree: i64,
    /// Observed degree of L(ρ, s).
    pub l_degree: usize,
    pub degree_match: bool,
    /// g − 1 + m + Σ s, the alternative endpoint abscissa.
    pub remark_endpoint: i64,
    pub remark_matches: bool,
    /// Σ ω_Q / (a(p − 1)); only a·Ω is integral in general.
    pub omega: Rational,
    pub duality: Option<DualityReport>,
}

impl VerificationReport {
    /// Every checked property holds.
    pub fn all_hold(&self) -> bool {
        self.theorem.holds
            && self.endpoints_match
            && self.slopes_in_unit_interval
            && self.degree_match
            && self.duality.as_ref().is_none_or(|d| d.np_dual && d.hp_dual)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub budget: u128,
    pub check_duality: bool,
    /// Replaces the computed Hodge polygon.
    pub hodge_override: Option<RationalPolygon>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: super::sums::DEFAULT_BUDGET,
            check_duality: true,
            hodge_override: None,
        }
    }
}

/// NP and HP of `spec` together with its L-polynomial.
pub fn newton_and_hodge(spec: &CharacterSpec, budget: u128) -> Result<(LPolynomial, RationalPolygon, RationalPolygon)> {
    newton_and_hodge_of(spec, l_polynomial(spec, budget)?)
}

fn newton_and_hodge_of(spec: &CharacterSpec, l: LPolynomial) -> Result<(LPolynomial, RationalPolygon, RationalPolygon)> {
    let np = newton_polygon_of_l(spec, &l)?;
    let hp = hodge_polygon(spec.genus(), &l.data, spec.p(), spec.a())?;
    Ok((l, np, hp))
}

pub fn verify_newton_over_hodge(spec: &CharacterSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_newton_over_hodge_with(spec, opts, |s| l_polynomial(s, opts.budget))
}

/// As `verify_newton_over_hodge`, with L-polynomials (of `spec` and, for
/// the duality check, of its inverse) supplied by `lfun`.
pub fn verify_newton_over_hodge_with<F>(spec: &CharacterSpec, opts: &VerifyOptions, mut lfun: F) -> Result<VerificationReport>
where
    F: FnMut(&CharacterSpec) -> Result<LPolynomial>,
{
    let (l, np, hp) = newton_and_hodge_of(spec, lfun(spec)?)?;
    let hp = opts.hodge_override.clone().unwrap_or(hp);
    let theorem = np.lies_above(&hp);
    let endpoints_match = np.endpoint() == hp.endpoint();
    let unit = Rational::from_integer(0)..=Rational::from_integer(1);
    let slopes_in_unit_interval = np.slopes().iter().all(|(s, _)| unit.contains(s));
    let remark = remark_endpoint(spec.genus(), &l.data);
    let duality = if opts.check_duality {
        let inv = spec.inverse()?;
        let (_, np_inv, hp_inv) = newton_and_hodge_of(&inv, lfun(&inv)?)?;
        Some(DualityReport {
            np_dual: are_dual_polygons(&np, &np_inv),
            hp_dual: are_dual_polygons(&hp, &hp_inv),
            np_inverse: np_inv,
            hp_inverse: hp_inv,
        })
    } else {
        None
    };
    Ok(VerificationReport {
        theorem,
        endpoints_match,
        slopes_in_unit_interval,
        degree: l.degree as i64,
        l_degree: l.coeffs.len() - 1,
        degree_match: l.coeffs.len() - 1 == l.degree,
        remark_endpoint: remark,
        remark_matches: remark == l.degree as i64,
        omega: omega_exact(&l.data, spec.p(), spec.a()),
        np,
        hp,
        duality,
    })
}
