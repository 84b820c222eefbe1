//! Assembly of L(ρ, V, s) and L(ρ, s) from character sums, and their
//! q-adic Newton polygons.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::sums::{character_sums, sum_ring};
use crate::character::{
    analyze_points, euler_poincare_degree, remark_endpoint, CharacterSpec, FrobeniusValue, Point,
    RamificationDatum,
};
use crate::cyclotomic::{max_digits, CycloInt, CycloRing, PadicRing, PadicValuation};
use crate::polygon::RationalPolygon;
use crate::{Error, Rational, Result};

/// Extra coefficients computed past the expected degree; they must vanish.
pub const GUARD: usize = 3;

/// L(ρ, s) as an exact polynomial over Z[ζ_{p^n}, ζ_{q−1}].
#[derive(Clone, Debug)]
pub struct LPolynomial {
    pub ring: CycloRing,
    /// Coefficients of L(ρ, s), constant term 1, length degree + 1.
    pub coeffs: Vec<CycloInt>,
    /// Coefficients of L(ρ, V, s) through degree + GUARD.
    pub partial: Vec<CycloInt>,
    pub degree: usize,
    /// All removed points.
    pub removed: Vec<Point>,
    /// Removed points where ρ is unramified, restored by completion.
    pub restored: Vec<(Point, FrobeniusValue)>,
    pub data: Vec<RamificationDatum>,
}

/// Coefficients of exp(Σ S_k s^k / k) through s^{len−1}, via
/// j c_j = Σ_{i=1}^{j} S_i c_{j−i}; fails if some c_j is not integral.
pub fn exp_of_sums(ring: &CycloRing, sums: &[CycloInt], len: usize) -> Result<Vec<CycloInt>> {
    let mut c = Vec::with_capacity(len);
    c.push(ring.one());
    for j in 1..len {
        let mut acc = ring.zero();
        for i in 1..=j {
            acc = ring.add(&acc, &ring.mul(&sums[i - 1], &c[j - i]));
        }
        let cj = ring
            .div_exact(&acc, &BigInt::from(j))
            .ok_or_else(|| Error::invariant(format!("coefficient {j} of L is not integral")))?;
        c.push(cj);
    }
    Ok(c)
}

/// series · (1 − λ s)^{-1}, truncated to the same length.
pub fn divide_euler_factor(ring: &CycloRing, series: &[CycloInt], lambda: &CycloInt) -> Vec<CycloInt> {
    let mut out: Vec<CycloInt> = Vec::with_capacity(series.len());
    for (i, c) in series.iter().enumerate() {
        let v = if i == 0 {
            c.clone()
        } else {
            ring.add(c, &ring.mul(lambda, &out[i - 1]))
        };
        out.push(v);
    }
    out
}

/// Builds L(ρ, s) from precomputed sums S_1..S_{D+GUARD}.
pub fn l_polynomial_from_sums(spec: &CharacterSpec, sums: &[CycloInt]) -> Result<LPolynomial> {
    if spec.genus() != 0 {
        return Err(Error::Unsupported("L-functions are computed over P^1 only".into()));
    }
    let ring = sum_ring(spec)?;
    let points = analyze_points(spec)?;
    let data: Vec<RamificationDatum> = points.iter().map(|a| a.datum.clone()).collect();
    let degree = euler_poincare_degree(0, &data)? as usize;
    let len = degree + GUARD + 1;
    if sums.len() < len - 1 {
        return Err(Error::input(format!("need {} sums, got {}", len - 1, sums.len())));
    }
    let partial = exp_of_sums(&ring, &sums[..len - 1], len)?;
    let mut full = partial.clone();
    let mut restored = Vec::new();
    for a in &points {
        if let Some(f) = a.frobenius {
            let lambda = ring.root_of_unity(f.wild as i64, f.tame as i64);
            full = divide_euler_factor(&ring, &full, &lambda);
            restored.push((a.datum.point.clone(), f));
        }
    }
    let top = full.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if top != degree {
        let remark = remark_endpoint(0, &data);
        let note = if top < len - 1 && top as i64 == remark {
            "; observed degree matches g-1+m+sum(s)"
        } else {
            ""
        };
        return Err(Error::invariant(format!(
            "L(rho,s) has a nonzero coefficient at degree {top}, expected degree {degree} \
             (guard through {}){note}",
            len - 1
        )));
    }
    full.truncate(degree + 1);
    Ok(LPolynomial {
        ring,
        coeffs: full,
        partial,
        degree,
        removed: points.iter().map(|a| a.datum.point.clone()).collect(),
        restored,
        data: data.into_iter().filter(|d| d.is_ramified()).collect(),
    })
}

/// L(ρ, s) by enumeration.
pub fn l_polynomial(spec: &CharacterSpec, budget: u128) -> Result<LPolynomial> {
    let points = analyze_points(spec)?;
    let data: Vec<RamificationDatum> = points.into_iter().map(|a| a.datum).collect();
    let degree = euler_poincare_degree(spec.genus(), &data)? as usize;
    let sums = character_sums(spec, degree + GUARD, budget)?;
    l_polynomial_from_sums(spec, &sums)
}

/// v_q of each coefficient, computed at `digits` p-adic digits.
pub fn coefficient_valuations(
    spec: &CharacterSpec,
    l: &LPolynomial,
    digits: u32,
) -> Result<Vec<PadicValuation>> {
    let padic = PadicRing::new(spec.field(), spec.n() as u32, digits, spec.generator())?;
    let a = Rational::from_integer(spec.a() as i64);
    l.coeffs
        .iter()
        .map(|c| {
            Ok(match padic.valuation(&padic.from_exact(&l.ring, c)?) {
                PadicValuation::Finite(v) => PadicValuation::Finite(v / a),
                PadicValuation::AtLeast(v) => PadicValuation::AtLeast(v / a),
            })
        })
        .collect()
}

/// NP_q(L(ρ, s)); the precision grows until no truncated coefficient could
/// lie below the hull.
pub fn newton_polygon_of_l(spec: &CharacterSpec, l: &LPolynomial) -> Result<RationalPolygon> {
    let cap = max_digits(spec.p());
    let mut digits = (spec.a() as u32 * (l.degree as u32 + 2) + 1).min(cap);
    loop {
        let vals = coefficient_valuations(spec, l, digits)?;
        let pts: Vec<(Rational, Option<Rational>)> = vals
            .iter()
            .enumerate()
            .map(|(i, v)| (Rational::from_integer(i as i64), v.finite()))
            .collect();
        let hull = RationalPolygon::lower_hull(&pts)?;
        let certified = hull.endpoint().0 == Rational::from_integer(l.degree as i64)
            && vals.iter().enumerate().all(|(i, v)| match v {
                PadicValuation::Finite(_) => true,
                PadicValuation::AtLeast(b) => hull
                    .eval(Rational::from_integer(i as i64))
                    .is_some_and(|h| *b >= h),
            });
        if certified {
            return Ok(hull);
        }
        if digits >= cap {
            return Err(Error::Precision(format!(
                "Newton polygon not certified at {digits} digits"
            )));
        }
        digits = (digits * 2).min(cap);
    }
}
