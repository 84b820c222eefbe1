//! The splitting series E_r = Π E([c] γ_{n−i} z^{−j}).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::operator::series_mul;
use crate::character::WittTerm;
use crate::cyclotomic::artin_hasse::{eval_artin_hasse, terms_needed};
use crate::cyclotomic::{artin_hasse_coefficients, solve_gammas, CycloPadic, PadicRing, PadicValuation};
use crate::{Error, Rational, Result};

/// Σ_{m < len} c_m z^{−m} over Z_p[ζ_{p^n}] / p^M.
#[derive(Clone, Debug)]
pub struct SplittingSeries {
    pub coeffs: Vec<CycloPadic>,
    /// Swan conductor s behind the growth bound; 0 for a constant series.
    pub swan: u64,
}

impl SplittingSeries {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lower bound m / (s(p − 1)) on v_p(c_m) for m ≥ 1; `None` when s = 0,
    /// where c_m must vanish.
    pub fn growth_bound(&self, p: u64, m: usize) -> Option<Rational> {
        (self.swan > 0).then(|| Rational::new(m as i64, (self.swan * (p - 1)) as i64))
    }
}

/// max p^{n−1−i} j over the terms V^i[c z^{−j}].
pub fn terms_swan(terms: &[WittTerm], p: u64, n: usize) -> u64 {
    terms
        .iter()
        .filter(|t| t.exponent < 0)
        .map(|t| (-t.exponent) as u64 * p.pow((n - 1 - t.level) as u32))
        .max()
        .unwrap_or(0)
}

/// E_r through z^{−(len−1)} for terms V^i[c z^e] with e ≤ 0 (e = 0 gives a
/// constant factor E([c] γ_{n−i})). Checks E_r ≡ 1 modulo the maximal ideal
/// and the termwise growth bound.
pub fn splitting_series(ring: &PadicRing, terms: &[WittTerm], len: usize) -> Result<SplittingSeries> {
    if ring.a() != 1 {
        return Err(Error::Unsupported("splitting series need q = p".into()));
    }
    let (p, n) = (ring.p(), ring.n() as usize);
    if terms.iter().any(|t| t.level >= n || t.exponent > 0) {
        return Err(Error::input("splitting terms need level < n and exponent <= 0"));
    }
    let gammas = solve_gammas(ring)?;
    let ah = artin_hasse_coefficients(ring, len.max(2))?;
    let mut acc = vec![ring.zero(); len];
    if len > 0 {
        acc[0] = ring.one();
    }
    for t in terms {
        let gamma = &gammas[n - t.level];
        let y = ring.mul(&ring.teichmuller(&t.coeff), gamma);
        if t.exponent == 0 {
            let v = Rational::new(1, (p.pow((n - 1 - t.level) as u32) * (p - 1)) as i64);
            let coeffs = artin_hasse_coefficients(ring, terms_needed(ring, v))?;
            let c = eval_artin_hasse(ring, &coeffs, &y)?;
            acc.iter_mut().for_each(|a| *a = ring.mul(a, &c));
            continue;
        }
        let j = (-t.exponent) as usize;
        let mut factor = vec![ring.zero(); len];
        let mut pw = ring.one();
        for k in 0..=(len.saturating_sub(1) / j) {
            factor[j * k] = ring.mul(&ah[k], &pw);
            pw = ring.mul(&pw, &y);
        }
        acc = series_mul(ring, &acc, &factor, len);
    }
    let out = SplittingSeries {
        coeffs: acc,
        swan: terms_swan(terms, p, n),
    };
    if let Some(c0) = out.coeffs.first() {
        if ring.valuation(&ring.sub(c0, &ring.one())).lower_bound() <= Rational::from_integer(0) {
            return Err(Error::invariant("splitting series is not 1 modulo the maximal ideal"));
        }
    }
    for (m, c) in out.coeffs.iter().enumerate().skip(1) {
        let ok = match (out.growth_bound(p, m), ring.valuation(c)) {
            (_, PadicValuation::AtLeast(_)) => true,
            (None, PadicValuation::Finite(_)) => false,
            (Some(b), PadicValuation::Finite(v)) => v >= b,
        };
        if !ok {
            return Err(Error::invariant(format!(
                "splitting series coefficient {m} violates the growth bound"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;

    fn ring(p: u32, n: u32) -> PadicRing {
        let k = FieldDesc::prime_field(p).unwrap();
        let g = k.multiplicative_generator();
        PadicRing::new(&k, n, 10, &g).unwrap()
    }

    fn term(level: usize, exponent: i64, c: i64, p: u32) -> WittTerm {
        let k = FieldDesc::prime_field(p).unwrap();
        WittTerm { level, exponent, coeff: k.from_int(c) }
    }

    #[test]
    fn empty_witt_vector_gives_one() {
        let r = ring(3, 1);
        let e = splitting_series(&r, &[], 8).unwrap();
        assert_eq!(e.coeffs[0], r.one());
        assert!(e.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn linear_term_has_gamma_valuation() {
        for p in [3u32, 5] {
            let r = ring(p, 1);
            let e = splitting_series(&r, &[term(0, -1, 2, p)], 12).unwrap();
            assert_eq!(
                r.valuation(&e.coeffs[1]),
                PadicValuation::Finite(Rational::new(1, p as i64 - 1))
            );
        }
    }

    #[test]
    fn quadratic_term_meets_growth_bound() {
        let r = ring(3, 1);
        let e = splitting_series(&r, &[term(0, -2, 1, 3)], 40).unwrap();
        assert_eq!(e.swan, 2);
        for (m, c) in e.coeffs.iter().enumerate().skip(1) {
            if let PadicValuation::Finite(v) = r.valuation(c) {
                assert!(v >= Rational::new(m as i64, 4));
            }
            if m % 2 == 1 {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn level_one_term_uses_gamma_one() {
        // V[t^-1] in W_2 has order p: its coefficient of z^-1 is γ_1
        let r = ring(3, 2);
        let e = splitting_series(&r, &[term(1, -1, 1, 3)], 6).unwrap();
        assert_eq!(e.swan, 1);
        assert_eq!(r.valuation(&e.coeffs[1]), PadicValuation::Finite(Rational::new(1, 2)));
    }
}
