//! Truncated Laurent series Σ c_e u^e over a coefficient ring, with precision
//! tracking: a series with precision `P` is known modulo u^P.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{FieldDesc, FieldElement};
use super::galois::{GaloisRing, GaloisRingElement};

/// Minimal commutative-ring interface used by [`Laurent`].
pub trait CoeffRing {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl CoeffRing for FieldDesc {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldDesc::zero(self)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldDesc::add(self, a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldDesc::sub(self, a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldDesc::neg(self, a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldDesc::mul(self, a, b)
    }
}

impl CoeffRing for GaloisRing {
    type Elem = GaloisRingElement;
    fn zero(&self) -> GaloisRingElement {
        GaloisRing::zero(self)
    }
    fn is_zero(&self, a: &GaloisRingElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        GaloisRing::add(self, a, b)
    }
    fn sub(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        GaloisRing::sub(self, a, b)
    }
    fn neg(&self, a: &GaloisRingElement) -> GaloisRingElement {
        GaloisRing::neg(self, a)
    }
    fn mul(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        GaloisRing::mul(self, a, b)
    }
}

/// Stand-in for "no precision bound" in valuation arithmetic.
const INF: i64 = i64::MAX / 4;

/// A Laurent series known modulo u^prec (`prec = None` means exact).
///
/// Invariant: `coeffs` has no leading or trailing zeros, and every stored
/// exponent is below `prec`.
#[derive(Clone, PartialEq)]
pub struct Laurent<E> {
    start: i64,
    coeffs: Vec<E>,
    prec: Option<i64>,
}

impl<E: fmt::Debug> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            write!(f, "{}:{:?} ", self.start + i as i64, c)?;
        }
        match self.prec {
            Some(p) => write!(f, "+ O(u^{p})]"),
            None => write!(f, "]"),
        }
    }
}

impl<E: Clone + PartialEq + fmt::Debug> Laurent<E> {
    pub fn zero(prec: Option<i64>) -> Self {
        Laurent {
            start: 0,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn monomial<R: CoeffRing<Elem = E>>(r: &R, c: E, e: i64) -> Self {
        Self::from_coeffs(r, e, vec![c], None)
    }

    /// Series Σ coeffs[i] u^{start+i}, truncated below `prec`.
    pub fn from_coeffs<R: CoeffRing<Elem = E>>(
        r: &R,
        start: i64,
        coeffs: Vec<E>,
        prec: Option<i64>,
    ) -> Self {
        let mut s = Laurent {
            start,
            coeffs,
            prec,
        };
        s.normalize(r);
        s
    }

    fn normalize<R: CoeffRing<Elem = E>>(&mut self, r: &R) {
        if let Some(p) = self.prec {
            let keep = (p - self.start).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| r.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !r.is_zero(c));
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = 0;
            }
        }
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True if no nonzero term is stored (the series may still be O(u^prec)).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i64 - 1)
    }

    fn val_bound(&self) -> i64 {
        match (self.valuation(), self.prec) {
            (Some(v), _) => v,
            (None, Some(p)) => p,
            (None, None) => INF,
        }
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, r: &R, e: i64) -> E {
        if e < self.start || e >= self.start + self.coeffs.len() as i64 {
            return r.zero();
        }
        self.coeffs[(e - self.start) as usize].clone()
    }

    /// Nonzero terms (exponent, coefficient) in increasing exponent order.
    pub fn terms<'a, R: CoeffRing<Elem = E>>(
        &'a self,
        r: &'a R,
    ) -> impl Iterator<Item = (i64, &'a E)> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !r.is_zero(c))
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncate<R: CoeffRing<Elem = E>>(&self, r: &R, prec: i64) -> Self {
        let new_prec = Some(self.prec.map_or(prec, |p| p.min(prec)));
        Self::from_coeffs(r, self.start, self.coeffs.clone(), new_prec)
    }

    /// Terms with negative exponent; exact.
    pub fn pole_part<R: CoeffRing<Elem = E>>(&self, r: &R) -> Self {
        let keep = (-self.start).clamp(0, self.coeffs.len() as i64) as usize;
        Self::from_coeffs(r, self.start, self.coeffs[..keep].to_vec(), None)
    }

    pub fn map<F, R2>(&self, r2: &R2, f: F) -> Laurent<R2::Elem>
    where
        R2: CoeffRing,
        F: Fn(&E) -> R2::Elem,
    {
        Laurent::from_coeffs(r2, self.start, self.coeffs.iter().map(f).collect(), self.prec)
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    fn combine<R: CoeffRing<Elem = E>>(
        &self,
        r: &R,
        other: &Self,
        op: impl Fn(&R, &E, &E) -> E,
        neg: impl Fn(&R, &E) -> E,
    ) -> Self {
        let prec = Self::min_prec(self.prec, other.prec);
        if other.coeffs.is_empty() {
            return Self::from_coeffs(r, self.start, self.coeffs.clone(), prec);
        }
        if self.coeffs.is_empty() {
            let c = other.coeffs.iter().map(|x| neg(r, x)).collect();
            return Self::from_coeffs(r, other.start, c, prec);
        }
        let lo = self.start.min(other.start);
        let hi = self
            .degree()
            .unwrap()
            .max(other.degree().unwrap());
        let hi = prec.map_or(hi, |p| hi.min(p - 1));
        if hi < lo {
            return Self::zero(prec);
        }
        let z = r.zero();
        let coeffs = (lo..=hi)
            .map(|e| {
                let a = self.coeff_ref(e).unwrap_or(&z);
                let b = other.coeff_ref(e).unwrap_or(&z);
                op(r, a, b)
            })
            .collect();
        Self::from_coeffs(r, lo, coeffs, prec)
    }

    fn coeff_ref(&self, e: i64) -> Option<&E> {
        if e < self.start {
            return None;
        }
        self.coeffs.get((e - self.start) as usize)
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        self.combine(r, other, |r, a, b| r.add(a, b), |_, x| x.clone())
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        self.combine(r, other, |r, a, b| r.sub(a, b), |r, x| r.neg(x))
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, r: &R) -> Self {
        Self::from_coeffs(r, self.start, self.coeffs.iter().map(|c| r.neg(c)).collect(), self.prec)
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, r: &R, c: &E) -> Self {
        Self::from_coeffs(r, self.start, self.coeffs.iter().map(|x| r.mul(x, c)).collect(), self.prec)
    }

    /// Multiplication by u^k.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn mul<R: CoeffRing<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            _ => {
                let a = self.val_bound().saturating_add(other.prec.unwrap_or(INF));
                let b = other.val_bound().saturating_add(self.prec.unwrap_or(INF));
                Some(a.min(b))
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(prec);
        }
        let start = self.start + other.start;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - start).max(0) as usize);
        }
        let mut out = vec![r.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if r.is_zero(b) {
                    continue;
                }
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::from_coeffs(r, start, out, prec)
    }

    pub fn pow<R: CoeffRing<Elem = E>>(&self, r: &R, one: &E, mut k: u64) -> Self {
        let mut result = Self::monomial(r, one.clone(), 0);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(r, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(r, &base);
            }
        }
        result
    }

    /// Substitution u ↦ u^k for k ≥ 1.
    pub fn inflate<R: CoeffRing<Elem = E>>(&self, r: &R, k: i64) -> Self {
        assert!(k >= 1);
        if self.coeffs.is_empty() {
            return Self::zero(self.prec.map(|p| p * k));
        }
        let mut out = vec![r.zero(); (self.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c.clone();
        }
        Self::from_coeffs(r, self.start * k, out, self.prec.map(|p| p * k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldDesc {
        FieldDesc::prime_field(5).unwrap()
    }

    fn series(k: &FieldDesc, start: i64, c: &[i64], prec: Option<i64>) -> Laurent<FieldElement> {
        Laurent::from_coeffs(k, start, c.iter().map(|&v| k.from_int(v)).collect(), prec)
    }

    #[test]
    fn product_precision_follows_valuations() {
        let k = f5();
        let a = series(&k, -2, &[1, 3], Some(4));
        let b = series(&k, 1, &[2], Some(3));
        let c = a.mul(&k, &b);
        // min(-2 + 3, 1 + 4)
        assert_eq!(c.precision(), Some(1));
        assert_eq!(c.valuation(), Some(-1));
    }

    #[test]
    fn exact_operations_round_trip() {
        let k = f5();
        let a = series(&k, -3, &[1, 0, 2, 4], None);
        let b = series(&k, 0, &[3, 1], None);
        assert_eq!(a.add(&k, &b).sub(&k, &b), a);
        let sq = a.pow(&k, &k.one(), 2);
        assert_eq!(sq, a.mul(&k, &a));
        assert_eq!(sq.valuation(), Some(-6));
        assert_eq!(a.pole_part(&k).degree(), Some(-1));
    }

    #[test]
    fn frobenius_of_series_is_inflation() {
        // (Σ c_e u^e)^p = Σ c_e u^{pe} over F_p
        let k = f5();
        let a = series(&k, -2, &[1, 3, 0, 4], None);
        assert_eq!(a.pow(&k, &k.one(), 5), a.inflate(&k, 5));
    }
}
