//! Witt vectors of length n over truncated Laurent series in F_q((u)).
//!
//! Addition goes through ghost components of coordinatewise lifts to
//! GR(p^n, m)((u)): with w_k(X) = Σ_{i≤k} p^i X_i^{p^{k-i}}, the sum S
//! satisfies w_k(S) ≡ w_k(X) + w_k(Y) mod p^{k+1}, which determines s_k mod p.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldDesc, FieldElement};
use super::galois::{GaloisRing, GaloisRingElement};
use super::laurent::Laurent;
use crate::{Error, Result};

pub type Series = Laurent<FieldElement>;
type LiftedSeries = Laurent<GaloisRingElement>;

/// A Witt vector (x_0, …, x_{n-1}) with Laurent-series coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WittSeries {
    pub coords: Vec<Series>,
}

impl WittSeries {
    pub fn length(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Arithmetic context for W_n(F_q((u))).
#[derive(Clone, Debug)]
pub struct WittSeriesRing {
    field: FieldDesc,
    gr: GaloisRing,
    n: usize,
}

impl WittSeriesRing {
    pub fn new(field: &FieldDesc, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("Witt length must be positive"));
        }
        let gr = GaloisRing::new(field, n as u32)?;
        Ok(WittSeriesRing {
            field: field.clone(),
            gr,
            n,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> WittSeries {
        WittSeries {
            coords: vec![Laurent::zero(None); self.n],
        }
    }

    /// V^i[y]: the vector with `y` in coordinate i and zeros elsewhere.
    pub fn shifted_teichmuller(&self, i: usize, y: Series) -> WittSeries {
        let mut v = self.zero();
        v.coords[i] = y;
        v
    }

    fn lift(&self, s: &Series) -> LiftedSeries {
        s.map(&self.gr, |c| self.gr.lift(c))
    }

    /// Powers x, x^p, …, x^{p^{count-1}} of a lifted series.
    fn p_powers(&self, x: &LiftedSeries, count: usize) -> Vec<LiftedSeries> {
        let one = self.gr.one();
        let mut out = Vec::with_capacity(count);
        let mut cur = x.clone();
        for j in 0..count {
            if j > 0 {
                cur = cur.pow(&self.gr, &one, self.gr.p());
            }
            out.push(cur.clone());
        }
        out
    }

    pub fn add(&self, x: &WittSeries, y: &WittSeries) -> WittSeries {
        let n = self.n;
        let p = self.gr.p() as i64;
        debug_assert_eq!(x.length(), n);
        debug_assert_eq!(y.length(), n);
        let xp: Vec<Vec<LiftedSeries>> = (0..n)
            .map(|i| self.p_powers(&self.lift(&x.coords[i]), n - i))
            .collect();
        let yp: Vec<Vec<LiftedSeries>> = (0..n)
            .map(|i| self.p_powers(&self.lift(&y.coords[i]), n - i))
            .collect();
        let mut sp: Vec<Vec<LiftedSeries>> = Vec::with_capacity(n);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc: LiftedSeries = Laurent::zero(None);
            let mut pi = 1i64;
            for i in 0..=k {
                let both = xp[i][k - i].add(&self.gr, &yp[i][k - i]);
                acc = acc.add(&self.gr, &both.scale(&self.gr, &self.gr.from_int(pi)));
                if i < k {
                    acc = acc.sub(
                        &self.gr,
                        &sp[i][k - i].scale(&self.gr, &self.gr.from_int(pi)),
                    );
                }
                pi *= p;
            }
            let sk: Series = acc.map(&self.field, |c| self.gr.reduce_divided(c, k as u32));
            sp.push(self.p_powers(&self.lift(&sk), n - k));
            out.push(sk);
        }
        WittSeries { coords: out }
    }

    /// Additive inverse; coordinatewise for odd p.
    pub fn neg(&self, x: &WittSeries) -> WittSeries {
        assert!(self.gr.p() != 2, "coordinatewise negation needs odd p");
        WittSeries {
            coords: x.coords.iter().map(|c| c.neg(&self.field)).collect(),
        }
    }

    pub fn sub(&self, x: &WittSeries, y: &WittSeries) -> WittSeries {
        self.add(x, &self.neg(y))
    }

    /// k·x for an integer k, by double-and-add.
    pub fn scalar_mul(&self, x: &WittSeries, k: i64) -> WittSeries {
        let base = if k < 0 { self.neg(x) } else { x.clone() };
        let mut k = k.unsigned_abs();
        let mut result = self.zero();
        let mut cur = base;
        while k > 0 {
            if k & 1 == 1 {
                result = self.add(&result, &cur);
            }
            k >>= 1;
            if k > 0 {
                cur = self.add(&cur, &cur);
            }
        }
        result
    }

    /// Applies a coefficient map (e.g. a field automorphism) to every coordinate.
    pub fn map_coeffs(&self, x: &WittSeries, f: impl Fn(&FieldElement) -> FieldElement) -> WittSeries {
        WittSeries {
            coords: x.coords.iter().map(|c| c.map(&self.field, &f)).collect(),
        }
    }

    /// Witt coordinates of the constant term, for a vector whose coordinates are regular.
    pub fn constant_term(&self, x: &WittSeries) -> Vec<FieldElement> {
        x.coords.iter().map(|c| c.coeff(&self.field, 0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(k: &FieldDesc, v: i64) -> Series {
        Laurent::monomial(k, k.from_int(v), 0)
    }

    #[test]
    fn constant_vectors_add_like_integers() {
        // W_2(F_3) ≅ Z/9: check against packing.
        let k = FieldDesc::prime_field(3).unwrap();
        let w = WittSeriesRing::new(&k, 2).unwrap();
        let gr = GaloisRing::new(&k, 2).unwrap();
        for a0 in 0..3 {
            for a1 in 0..3 {
                for b0 in 0..3 {
                    for b1 in 0..3 {
                        let x = WittSeries {
                            coords: vec![constant(&k, a0), constant(&k, a1)],
                        };
                        let y = WittSeries {
                            coords: vec![constant(&k, b0), constant(&k, b1)],
                        };
                        let s = w.add(&x, &y);
                        let pack = |v: &WittSeries| gr.witt_pack(&w.constant_term(v));
                        assert_eq!(pack(&s), gr.add(&pack(&x), &pack(&y)));
                    }
                }
            }
        }
    }

    #[test]
    fn carry_from_poles() {
        // [u^{-1}] + [u^{-1}] over F_3: second coordinate is -(2^3-2)/3 ... via ghost.
        let k = FieldDesc::prime_field(3).unwrap();
        let w = WittSeriesRing::new(&k, 2).unwrap();
        let x = w.shifted_teichmuller(0, Laurent::monomial(&k, k.one(), -1));
        let s = w.add(&x, &x);
        assert_eq!(s.coords[0], Laurent::monomial(&k, k.from_int(2), -1));
        // s_1 = (2 - 2^3)/3 · u^{-3} = -2 u^{-3} = u^{-3}
        assert_eq!(s.coords[1], Laurent::monomial(&k, k.one(), -3));
    }

    #[test]
    fn scalar_multiple_matches_repeated_addition() {
        let k = FieldDesc::prime_field(5).unwrap();
        let w = WittSeriesRing::new(&k, 2).unwrap();
        let x = WittSeries {
            coords: vec![
                Laurent::from_coeffs(&k, -2, vec![k.one(), k.from_int(3)], None),
                Laurent::monomial(&k, k.from_int(2), -1),
            ],
        };
        let mut acc = w.zero();
        for _ in 0..7 {
            acc = w.add(&acc, &x);
        }
        assert_eq!(w.scalar_mul(&x, 7), acc);
        assert!(w.add(&x, &w.neg(&x)).is_zero());
    }
}
