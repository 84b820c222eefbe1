//! The Artin–Hasse exponential E(x) = exp(Σ_i x^{p^i}/p^i) and the elements
//! γ_i with E(γ_i) a primitive p^i-th root of unity.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::padic::{CycloPadic, PadicRing, PadicValuation};
use crate::{Error, Rational, Result};

/// Exact coefficients e_0..e_{len-1} of E(x), from
/// (k+1) e_{k+1} = Σ_{i: p^i − 1 ≤ k} e_{k − p^i + 1}.
pub fn artin_hasse_rational(p: u64, len: usize) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = Vec::with_capacity(len);
    if len == 0 {
        return e;
    }
    e.push(BigRational::one());
    for k in 0..len.saturating_sub(1) {
        let mut acc = BigRational::zero();
        let mut pi: usize = 1;
        while pi - 1 <= k {
            acc += &e[k - (pi - 1)];
            pi = match pi.checked_mul(p as usize) {
                Some(v) => v,
                None => break,
            };
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k + 1)));
    }
    e
}

/// Coefficients of E(x) reduced into `ring` (as integers mod p^M).
///
/// Fails if a coefficient is not p-integral.
pub fn artin_hasse_coefficients(ring: &PadicRing, len: usize) -> Result<Vec<CycloPadic>> {
    artin_hasse_rational(ring.p(), len)
        .iter()
        .map(|c| ring.from_rational(c.numer(), c.denom()))
        .collect()
}

/// Σ_k e_k y^k, summed until y^k vanishes modulo p^M; requires v(y) > 0.
pub fn eval_artin_hasse(ring: &PadicRing, coeffs: &[CycloPadic], y: &CycloPadic) -> Result<CycloPadic> {
    let mut acc = ring.zero();
    let mut pw = ring.one();
    for c in coeffs {
        if pw.is_zero() {
            return Ok(acc);
        }
        acc = ring.add(&acc, &ring.mul(c, &pw));
        pw = ring.mul(&pw, y);
    }
    if pw.is_zero() {
        Ok(acc)
    } else {
        Err(Error::Precision("Artin–Hasse series truncated too early".into()))
    }
}

/// E'(y) = Σ k e_k y^{k-1}.
fn eval_derivative(ring: &PadicRing, coeffs: &[CycloPadic], y: &CycloPadic) -> CycloPadic {
    let mut acc = ring.zero();
    let mut pw = ring.one();
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        if pw.is_zero() {
            break;
        }
        acc = ring.add(&acc, &ring.scale_int(&ring.mul(c, &pw), k as i64));
        pw = ring.mul(&pw, y);
    }
    acc
}

/// Number of Artin–Hasse terms needed for arguments of valuation ≥ v.
pub fn terms_needed(ring: &PadicRing, v: Rational) -> usize {
    let bound = Rational::from_integer(ring.digits() as i64) / v;
    bound.ceil().to_integer() as usize + 2
}

/// γ_i ∈ Z_p[ζ_{p^n}] with E(γ_i) = ζ_{p^n}^{p^{n-i}}, for 1 ≤ i ≤ n.
///
/// Newton iteration from ζ − 1; the root is checked to have valuation
/// 1/(p^{i-1}(p−1)).
pub fn solve_gamma(ring: &PadicRing, i: u32) -> Result<CycloPadic> {
    let p = ring.p();
    let n = ring.n();
    if i == 0 || i > n {
        return Err(Error::input("gamma index must be in 1..=n"));
    }
    let expected = Rational::new(1, (p.pow(i - 1) * (p - 1)) as i64);
    let target = ring.zeta_power(p.pow(n - i) as i64);
    let coeffs = artin_hasse_coefficients(ring, terms_needed(ring, expected))?;
    let mut gamma = ring.sub(&target, &ring.one());
    let cap = 4 * ring.digits() as usize * ring.e();
    for _ in 0..cap {
        let f = ring.sub(&eval_artin_hasse(ring, &coeffs, &gamma)?, &target);
        if f.is_zero() {
            let v = ring.valuation(&gamma);
            if v != PadicValuation::Finite(expected) {
                return Err(Error::invariant(alloc::format!(
                    "gamma_{i} has valuation {v:?}, expected {expected}"
                )));
            }
            return Ok(gamma);
        }
        let d = eval_derivative(ring, &coeffs, &gamma);
        let dinv = ring
            .inv_unit(&d)
            .ok_or_else(|| Error::invariant("E'(gamma) is not a unit"))?;
        gamma = ring.sub(&gamma, &ring.mul(&f, &dinv));
    }
    Err(Error::Convergence(alloc::format!(
        "gamma_{i} did not converge in {cap} steps"
    )))
}

/// All γ_1..γ_n (index 0 unused).
pub fn solve_gammas(ring: &PadicRing) -> Result<Vec<CycloPadic>> {
    let mut out = vec![ring.zero()];
    for i in 1..=ring.n() {
        out.push(solve_gamma(ring, i)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;

    #[test]
    fn known_coefficients_p3() {
        // E(x) = exp(x + x^3/3 + …) = 1 + x + x^2/2 + x^3/2 + …
        let e = artin_hasse_rational(3, 5);
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(e[0], r(1, 1));
        assert_eq!(e[1], r(1, 1));
        assert_eq!(e[2], r(1, 2));
        // 1/6 + 1/3
        assert_eq!(e[3], r(1, 2));
        // 1/24 + 1/3
        assert_eq!(e[4], r(3, 8));
    }

    #[test]
    fn coefficients_are_p_integral() {
        for p in [3u64, 5, 7] {
            for c in artin_hasse_rational(p, 60) {
                assert!(c.denom() % BigInt::from(p) != BigInt::zero());
            }
        }
    }

    #[test]
    fn gamma_hits_root_of_unity() {
        let k = FieldDesc::prime_field(3).unwrap();
        let ring = PadicRing::new(&k, 2, 8, &k.from_int(2)).unwrap();
        for i in 1..=2 {
            let g = solve_gamma(&ring, i).unwrap();
            let coeffs = artin_hasse_coefficients(&ring, 200).unwrap();
            let z = eval_artin_hasse(&ring, &coeffs, &g).unwrap();
            assert_eq!(ring.pow(&z, 3u64.pow(i)), ring.one());
            assert_ne!(ring.pow(&z, 3u64.pow(i - 1)), ring.one());
        }
    }
}
