//! Ramification data and the Hodge polygon.

use alloc::vec::Vec;

use super::local::{reduce_at, swan_conductor, ReducedWittData};
use super::spec::{CharacterSpec, Point};
use crate::arith::GaloisRing;
use crate::polygon::RationalPolygon;
use crate::{Error, Rational, Result};

/// Per-point invariants (s_Q, ε_Q, ω_Q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDatum {
    pub point: Point,
    /// Swan conductor s_Q.
    pub swan: u64,
    /// ε_Q ∈ [0, q − 2].
    pub eps: u64,
    /// Base-p digit sum of ε_Q.
    pub omega: u64,
}

impl RamificationDatum {
    pub fn is_ramified(&self) -> bool {
        self.swan > 0 || self.eps != 0
    }

    pub fn is_tame_ramified(&self) -> bool {
        self.eps != 0
    }

    /// ε_Q/(q − 1), the class of the tame exponent in Q/Z.
    pub fn e_class(&self, q: u64) -> Rational {
        Rational::new(self.eps as i64, q as i64 - 1)
    }
}

/// ρ(Frob_Q) = ζ_{p^n}^wild · ζ_{q−1}^tame at an unramified point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusValue {
    pub wild: u64,
    pub tame: u64,
}

/// Everything known about ρ at one special point.
#[derive(Clone, Debug)]
pub struct PointAnalysis {
    pub datum: RamificationDatum,
    pub reduced: ReducedWittData,
    /// Set exactly when the point is unramified.
    pub frobenius: Option<FrobeniusValue>,
}

pub fn digit_sum(mut x: u64, p: u64) -> u64 {
    let mut s = 0;
    while x > 0 {
        s += x % p;
        x /= p;
    }
    s
}

/// (ε_Q, ω_Q) from ord_Q(f): ε_Q = Γ·ord_Q(f) mod (q − 1).
pub fn tame_invariants(spec: &CharacterSpec, tame_order: i64) -> (u64, u64) {
    let q1 = spec.q() as i64 - 1;
    let eps = ((spec.gamma() as i64 % q1) * (tame_order % q1)).rem_euclid(q1) as u64;
    (eps, digit_sum(eps, spec.p()))
}

/// Analyses every special point of the spec.
pub fn analyze_points(spec: &CharacterSpec) -> Result<Vec<PointAnalysis>> {
    let k = spec.field();
    let gr = GaloisRing::new(k, spec.n() as u32)?;
    let dlog = spec.dlog_table();
    let q1 = spec.q() - 1;
    let mut out = Vec::new();
    for q in spec.special_points()? {
        let reduced = reduce_at(spec, &q)?;
        let swan = swan_conductor(&reduced, spec.p(), spec.n())?;
        let (eps, omega) = tame_invariants(spec, reduced.tame_order);
        let datum = RamificationDatum {
            point: q.clone(),
            swan,
            eps,
            omega,
        };
        let frobenius = if datum.is_ramified() {
            None
        } else {
            let wild = reduced
                .unramified_wild_value(&gr)
                .ok_or_else(|| Error::invariant("unramified point with wild terms"))?;
            let tame = match spec.tame() {
                Some(t) => {
                    let lead = t
                        .f
                        .leading_coefficient_at(k, &q)
                        .ok_or_else(|| Error::invariant("tame function vanishes identically"))?;
                    let l = dlog[k.index(&lead) as usize];
                    ((spec.character_exponent() as u128 * l as u128) % q1 as u128) as u64
                }
                None => 0,
            };
            Some(FrobeniusValue { wild, tame })
        };
        out.push(PointAnalysis {
            datum,
            reduced,
            frobenius,
        });
    }
    Ok(out)
}

/// Ramification data at the ramified points.
pub fn ramification_data(spec: &CharacterSpec) -> Result<Vec<RamificationDatum>> {
    Ok(analyze_points(spec)?
        .into_iter()
        .map(|a| a.datum)
        .filter(RamificationDatum::is_ramified)
        .collect())
}

/// Σ ω_Q / (a(p − 1)) as an exact rational. Only a·Ω is integral in
/// general; Ω itself can be fractional once three or more points are tamely
/// ramified and a > 1.
pub fn omega_exact(data: &[RamificationDatum], p: u64, a: usize) -> Rational {
    let total: u64 = data.iter().filter(|d| d.is_ramified()).map(|d| d.omega).sum();
    Rational::new(total as i64, a as i64 * (p as i64 - 1))
}

/// Ω_ρ, required to be a nonnegative integer.
pub fn omega_rho(data: &[RamificationDatum], p: u64, a: usize) -> Result<u64> {
    let omega = omega_exact(data, p, a);
    if !omega.is_integer() {
        return Err(Error::invariant(alloc::format!("Omega = {omega} is not an integer")));
    }
    Ok(omega.to_integer() as u64)
}

/// The set S_Q for one point.
pub fn local_slopes(d: &RamificationDatum, p: u64, a: usize) -> Vec<Rational> {
    let s = d.swan as i64;
    if s == 0 {
        return Vec::new();
    }
    if d.omega == 0 {
        return (1..s).map(|k| Rational::new(k, s)).collect();
    }
    let shift = Rational::new(d.omega as i64, a as i64 * s * (p as i64 - 1));
    (1..=s).map(|k| Rational::new(k, s) - shift).collect()
}

/// HP(ρ) as (slope, length) segments. The slope-0 and slope-1 lengths
/// g − 1 + m − Ω and g − 1 + m − n + Ω are rational when Ω is.
pub fn hodge_segments(
    genus: u32,
    data: &[RamificationDatum],
    p: u64,
    a: usize,
) -> Result<Vec<(Rational, Rational)>> {
    let ramified: Vec<&RamificationDatum> = data.iter().filter(|d| d.is_ramified()).collect();
    let m = ramified.len() as i64;
    if m == 0 {
        return Err(Error::input("Hodge polygon needs a ramified point"));
    }
    let n_tame = ramified.iter().filter(|d| d.is_tame_ramified()).count() as i64;
    let omega = omega_exact(data, p, a);
    let g = genus as i64;
    let zeros = Rational::from_integer(g - 1 + m) - omega;
    let ones = Rational::from_integer(g - 1 + m - n_tame) + omega;
    if zeros < Rational::from_integer(0) || ones < Rational::from_integer(0) {
        return Err(Error::invariant(alloc::format!(
            "negative Hodge multiplicity (zeros {zeros}, ones {ones})"
        )));
    }
    let mut segs = alloc::vec![(Rational::from_integer(0), zeros), (Rational::from_integer(1), ones)];
    for d in &ramified {
        segs.extend(local_slopes(d, p, a).into_iter().map(|s| (s, Rational::from_integer(1))));
    }
    segs.retain(|(_, len)| *len != Rational::from_integer(0));
    segs.sort();
    Ok(segs)
}

/// Slope multiset of HP(ρ), sorted; fails when Ω is not an integer.
pub fn hodge_slopes(genus: u32, data: &[RamificationDatum], p: u64, a: usize) -> Result<Vec<Rational>> {
    omega_rho(data, p, a)?;
    hodge_polygon(genus, data, p, a)?
        .slope_multiset()
        .ok_or_else(|| Error::invariant("fractional Hodge multiplicity"))
}

pub fn hodge_polygon(genus: u32, data: &[RamificationDatum], p: u64, a: usize) -> Result<RationalPolygon> {
    RationalPolygon::from_slopes(&hodge_segments(genus, data, p, a)?)
}

/// 2(g − 1 + m) + Σ (s_Q − 1) over ramified points.
pub fn euler_poincare_degree(genus: u32, data: &[RamificationDatum]) -> Result<i64> {
    let ramified: Vec<&RamificationDatum> = data.iter().filter(|d| d.is_ramified()).collect();
    let m = ramified.len() as i64;
    let d = 2 * (genus as i64 - 1 + m) + ramified.iter().map(|d| d.swan as i64 - 1).sum::<i64>();
    if genus == 0 && d < 0 {
        return Err(Error::input(alloc::format!(
            "Euler-Poincare degree {d} < 0: character is trivial"
        )));
    }
    Ok(d)
}

/// g − 1 + m + Σ s_Q, the alternative endpoint abscissa.
pub fn remark_endpoint(genus: u32, data: &[RamificationDatum]) -> i64 {
    let ramified: Vec<&RamificationDatum> = data.iter().filter(|d| d.is_ramified()).collect();
    genus as i64 - 1 + ramified.len() as i64 + ramified.iter().map(|d| d.swan as i64).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;
    use crate::character::spec::{RationalFunction, TameSpec};
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn datum(swan: u64, eps: u64, p: u64) -> RamificationDatum {
        RamificationDatum {
            point: Point::Infinity,
            swan,
            eps,
            omega: digit_sum(eps, p),
        }
    }

    #[test]
    fn q9_tame_exponents() {
        let k = FieldDesc::random(3, 2, 1).unwrap();
        let t = RationalFunction::polynomial(&k, vec![k.zero(), k.one()]);
        let spec = CharacterSpec::new(
            k.clone(),
            1,
            0,
            vec![RationalFunction::zero(&k)],
            Some(TameSpec { f: t, gamma: 5 }),
        )
        .unwrap();
        assert_eq!(tame_invariants(&spec, 1), (5, 3));
        assert_eq!(tame_invariants(&spec, -1), (3, 1));
        let data = ramification_data(&spec).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(omega_rho(&data, 3, 2).unwrap(), 1);
    }

    #[test]
    fn three_tame_points_give_fractional_omega() {
        // q = 9, ε = (5, 2, 1): Σω = 3 + 2 + 1 = 6, a(p − 1) = 4
        let data = [datum(0, 5, 3), datum(0, 2, 3), datum(1, 1, 3)];
        assert_eq!(omega_exact(&data, 3, 2), r(3, 2));
        assert!(omega_rho(&data, 3, 2).is_err());
        let hp = hodge_polygon(0, &data, 3, 2).unwrap();
        assert_eq!(hp.length(), r(euler_poincare_degree(0, &data).unwrap(), 1));
        assert_eq!(hp.slopes()[0], (r(0, 1), r(1, 2)));
    }

    #[test]
    fn stickelberger_hodge() {
        let data = [datum(0, 1, 3), datum(1, 1, 3)];
        assert_eq!(hodge_slopes(0, &data, 3, 1).unwrap(), vec![r(1, 2)]);
        assert_eq!(euler_poincare_degree(0, &data).unwrap(), 1);
    }

    #[test]
    fn artin_schreier_hodge() {
        let data = [datum(4, 0, 3)];
        assert_eq!(hodge_slopes(0, &data, 3, 1).unwrap(), vec![r(1, 4), r(2, 4), r(3, 4)]);
        assert_eq!(euler_poincare_degree(0, &data).unwrap(), 3);
    }

    #[test]
    fn four_point_quadratic_twist() {
        // P^1, four points, ω_i = a(p−1)/2; E is the genus-1 double cover
        let (p, a) = (5u64, 1usize);
        let swans = [1u64, 2, 3, 1];
        let rho: Vec<RamificationDatum> = swans.iter().map(|&s| datum(s, 2, p)).collect();
        assert_eq!(omega_rho(&rho, p, a).unwrap(), 2);
        let mut expected = vec![r(0, 1), r(1, 1)];
        for &s in &swans {
            let s = s as i64;
            expected.extend((1..=s).map(|k| r(2 * k - 1, 2 * s)));
        }
        expected.sort();
        assert_eq!(hodge_slopes(0, &rho, p, a).unwrap(), expected);

        let wild: Vec<RamificationDatum> = swans.iter().map(|&s| datum(s, 0, p)).collect();
        let hp_wild = hodge_slopes(0, &wild, p, a).unwrap();
        let on_e: Vec<RamificationDatum> = swans.iter().map(|&s| datum(2 * s, 0, p)).collect();
        let hp_e = hodge_slopes(1, &on_e, p, a).unwrap();
        let mut union = expected.clone();
        union.extend(hp_wild);
        union.sort();
        assert_eq!(hp_e, union);
        assert_eq!(hp_e.iter().filter(|s| **s == r(0, 1)).count(), 4);
    }
}
