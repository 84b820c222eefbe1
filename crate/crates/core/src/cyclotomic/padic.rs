//! The p-adic completion Z_q[ζ_{p^n}] modulo p^M, for valuations.
//!
//! Elements are Σ_{i<e} c_i x^i with x = ζ_{p^n} − 1 (a uniformizer) and
//! c_i ∈ GR(p^M, a) ≅ W_M(F_q). The tame root ζ_{q-1} maps to the
//! Teichmüller lift of a fixed generator of F_q^×.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::cycloint::{CycloInt, CycloRing};
use crate::arith::galois::{addmod, mulmod, submod, vp_u64};
use crate::arith::{FieldDesc, FieldElement, GaloisRing, GaloisRingElement};
use crate::{Error, Rational, Result};

/// Largest M with p^M < 2^63.
pub fn max_digits(p: u64) -> u32 {
    let mut m = 0;
    let mut v: u64 = 1;
    while let Some(next) = v.checked_mul(p) {
        if next >= (1u64 << 63) {
            break;
        }
        v = next;
        m += 1;
    }
    m
}

/// p-adic valuation (normalized v(p) = 1) of a truncated element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PadicValuation {
    Finite(Rational),
    /// The element vanishes modulo p^M; its valuation is at least this bound.
    AtLeast(Rational),
}

impl PadicValuation {
    pub fn finite(self) -> Option<Rational> {
        match self {
            PadicValuation::Finite(v) => Some(v),
            PadicValuation::AtLeast(_) => None,
        }
    }

    pub fn lower_bound(self) -> Rational {
        match self {
            PadicValuation::Finite(v) | PadicValuation::AtLeast(v) => v,
        }
    }
}

struct Inner {
    p: u64,
    n: u32,
    e: usize,
    digits: u32,
    pm: u64,
    gr: GaloisRing,
    eis: Vec<u64>,
    /// [g]^j for j < q − 1.
    tame_powers: Vec<GaloisRingElement>,
    generator: FieldElement,
}

/// Arithmetic context for Z_q[ζ_{p^n}] / p^M.
#[derive(Clone)]
pub struct PadicRing(Arc<Inner>);

impl fmt::Debug for PadicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicRing")
            .field("p", &self.0.p)
            .field("n", &self.0.n)
            .field("a", &self.0.gr.degree())
            .field("digits", &self.0.digits)
            .finish()
    }
}

/// Element Σ c_i x^i; coordinate (i, j) at index i·a + j.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloPadic {
    pub(crate) c: Vec<u64>,
}

impl CycloPadic {
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }
}

impl PadicRing {
    /// Z_q[ζ_{p^n}] modulo p^digits, with F_q given by `field` and ζ_{q-1} ↦ [generator].
    pub fn new(field: &FieldDesc, n: u32, digits: u32, generator: &FieldElement) -> Result<Self> {
        let p = field.p() as u64;
        if digits == 0 || digits > max_digits(p) {
            return Err(Error::Precision(alloc::format!(
                "{digits} digits of {p}-adic precision not representable (max {})",
                max_digits(p)
            )));
        }
        let gr = GaloisRing::new(field, digits)?;
        let pm = gr.modulus_int();
        let exact = CycloRing::new(p, n, 1)?;
        let eis = exact
            .eisenstein()
            .iter()
            .map(|c| big_mod(c, pm))
            .collect();
        let t = (field.order() - 1) as usize;
        let g = gr.teichmuller_lift(generator);
        let mut tame_powers = Vec::with_capacity(t);
        let mut cur = gr.one();
        for _ in 0..t {
            tame_powers.push(cur.clone());
            cur = gr.mul(&cur, &g);
        }
        if cur != gr.one() {
            return Err(Error::input("tame root is not a (q-1)-th root of unity"));
        }
        Ok(PadicRing(Arc::new(Inner {
            p,
            n,
            e: exact.e(),
            digits,
            pm,
            gr,
            eis,
            tame_powers,
            generator: generator.clone(),
        })))
    }

    /// Same ring at a different precision.
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        PadicRing::new(self.0.gr.field(), self.0.n, digits, &self.0.generator)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    /// Unramified degree a.
    pub fn a(&self) -> usize {
        self.0.gr.degree()
    }

    pub fn digits(&self) -> u32 {
        self.0.digits
    }

    pub fn modulus_int(&self) -> u64 {
        self.0.pm
    }

    pub fn galois_ring(&self) -> &GaloisRing {
        &self.0.gr
    }

    pub fn field(&self) -> &FieldDesc {
        self.0.gr.field()
    }

    fn dim(&self) -> usize {
        self.0.e * self.a()
    }

    pub fn zero(&self) -> CycloPadic {
        CycloPadic {
            c: vec![0; self.dim()],
        }
    }

    pub fn from_int(&self, v: i64) -> CycloPadic {
        let mut z = self.zero();
        z.c[0] = v.rem_euclid(self.0.pm as i64) as u64;
        z
    }

    pub fn from_big(&self, v: &BigInt) -> CycloPadic {
        let mut z = self.zero();
        z.c[0] = big_mod(v, self.0.pm);
        z
    }

    pub fn one(&self) -> CycloPadic {
        self.from_int(1)
    }

    /// The uniformizer x = ζ_{p^n} − 1.
    pub fn uniformizer(&self) -> CycloPadic {
        let mut z = self.zero();
        if self.0.e > 1 {
            z.c[self.a()] = 1;
        } else {
            // e = 1 only for p = 2, n = 1: x = -2
            z.c[0] = self.0.pm - 2;
        }
        z
    }

    /// Constant c ∈ GR(p^M, a).
    pub fn from_unramified(&self, c: &GaloisRingElement) -> CycloPadic {
        let mut z = self.zero();
        z.c[..self.a()].copy_from_slice(c.coeffs());
        z
    }

    /// Coefficient c_i ∈ GR(p^M, a) of x^i.
    pub fn coefficient(&self, z: &CycloPadic, i: usize) -> GaloisRingElement {
        let a = self.a();
        self.0.gr.from_coeffs(&z.c[i * a..(i + 1) * a])
    }

    pub fn teichmuller(&self, c: &FieldElement) -> CycloPadic {
        self.from_unramified(&self.0.gr.teichmuller_lift(c))
    }

    /// ζ_{p^n}^w = (1 + x)^w.
    pub fn zeta_power(&self, w: i64) -> CycloPadic {
        let pn = self.0.p.pow(self.0.n) as i64;
        let w = w.rem_euclid(pn) as u64;
        let base = self.add(&self.one(), &self.uniformizer());
        self.pow(&base, w)
    }

    /// ζ_{q-1}^j.
    pub fn tame_root_power(&self, j: i64) -> CycloPadic {
        let t = self.0.tame_powers.len() as i64;
        self.from_unramified(&self.0.tame_powers[j.rem_euclid(t) as usize])
    }

    /// Image of an exact element; requires ring's tame order to be q − 1.
    pub fn from_exact(&self, ring: &CycloRing, z: &CycloInt) -> Result<CycloPadic> {
        let t = self.0.tame_powers.len() as u64;
        if ring.tame_order() != t || ring.p() != self.0.p || ring.n() != self.0.n {
            return Err(Error::input("exact and p-adic rings do not match"));
        }
        let gr = &self.0.gr;
        let phi = ring.phi();
        let a = self.a();
        let mut out = self.zero();
        for i in 0..self.0.e {
            let mut acc = gr.zero();
            for j in 0..phi {
                let v = &z.c[i * phi + j];
                if v.is_zero() {
                    continue;
                }
                let scaled = scale_big(gr, &self.0.tame_powers[j], v, self.0.pm);
                acc = gr.add(&acc, &scaled);
            }
            out.c[i * a..(i + 1) * a].copy_from_slice(acc.coeffs());
        }
        Ok(out)
    }

    pub fn add(&self, x: &CycloPadic, y: &CycloPadic) -> CycloPadic {
        let pm = self.0.pm;
        CycloPadic {
            c: x.c
                .iter()
                .zip(&y.c)
                .map(|(&a, &b)| addmod(a, b, pm))
                .collect(),
        }
    }

    pub fn sub(&self, x: &CycloPadic, y: &CycloPadic) -> CycloPadic {
        let pm = self.0.pm;
        CycloPadic {
            c: x.c
                .iter()
                .zip(&y.c)
                .map(|(&a, &b)| submod(a, b, pm))
                .collect(),
        }
    }

    pub fn neg(&self, x: &CycloPadic) -> CycloPadic {
        let pm = self.0.pm;
        CycloPadic {
            c: x.c.iter().map(|&a| (pm - a) % pm).collect(),
        }
    }

    pub fn scale_int(&self, x: &CycloPadic, k: i64) -> CycloPadic {
        let pm = self.0.pm;
        let k = k.rem_euclid(pm as i64) as u64;
        CycloPadic {
            c: x.c
                .iter()
                .map(|&a| mulmod(a, k, pm))
                .collect(),
        }
    }

    pub fn mul(&self, x: &CycloPadic, y: &CycloPadic) -> CycloPadic {
        let e = self.0.e;
        let a = self.a();
        let pm = self.0.pm;
        let gr = &self.0.gr;
        let mut acc: Vec<GaloisRingElement> = vec![gr.zero(); 2 * e - 1];
        let ys: Vec<Option<GaloisRingElement>> = (0..e)
            .map(|i| {
                let c = &y.c[i * a..(i + 1) * a];
                c.iter().any(|&v| v != 0).then(|| gr.from_coeffs(c))
            })
            .collect();
        for i in 0..e {
            let xc = &x.c[i * a..(i + 1) * a];
            if xc.iter().all(|&v| v == 0) {
                continue;
            }
            let xi = gr.from_coeffs(xc);
            for (j, yj) in ys.iter().enumerate() {
                if let Some(yj) = yj {
                    let prod = if a == 1 {
                        gr.from_coeffs(&[mulmod(xi.coeffs()[0], yj.coeffs()[0], pm)])
                    } else {
                        gr.mul(&xi, yj)
                    };
                    acc[i + j] = gr.add(&acc[i + j], &prod);
                }
            }
        }
        for k in (e..2 * e - 1).rev() {
            let top = core::mem::replace(&mut acc[k], gr.zero());
            if top.is_zero() {
                continue;
            }
            for (i, &c) in self.0.eis[..e].iter().enumerate() {
                if c != 0 {
                    acc[k - e + i] = gr.sub(&acc[k - e + i], &gr.scale(&top, c as i64));
                }
            }
        }
        let mut out = self.zero();
        for i in 0..e {
            out.c[i * a..(i + 1) * a].copy_from_slice(acc[i].coeffs());
        }
        out
    }

    pub fn pow(&self, x: &CycloPadic, mut k: u64) -> CycloPadic {
        let mut result = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Whether the constant coefficient is a unit, i.e. v(x) = 0.
    pub fn is_unit(&self, x: &CycloPadic) -> bool {
        let a = self.a();
        x.c[..a].iter().any(|&v| v % self.0.p != 0)
    }

    /// Inverse of a unit by Newton iteration w ↦ w(2 − xw).
    pub fn inv_unit(&self, x: &CycloPadic) -> Option<CycloPadic> {
        if !self.is_unit(x) {
            return None;
        }
        let c0 = self.coefficient(x, 0);
        let w0 = self.0.gr.inv_unit(&c0)?;
        let mut w = self.from_unramified(&w0);
        let two = self.from_int(2);
        // precision in units of v(x) = 1/e doubles each step
        let mut prec: u64 = 1;
        let target = self.0.digits as u64 * self.0.e as u64;
        loop {
            w = self.mul(&w, &self.sub(&two, &self.mul(x, &w)));
            prec *= 2;
            if prec > target {
                break;
            }
        }
        debug_assert_eq!(self.mul(x, &w), self.one());
        Some(w)
    }

    /// Divides by p^k; every coordinate must be divisible. The top k digits
    /// of the result are unknown and set to zero.
    pub fn div_p_power(&self, x: &CycloPadic, k: u32) -> Option<CycloPadic> {
        let pk = self.0.p.pow(k);
        let mut out = self.zero();
        for (o, &v) in out.c.iter_mut().zip(&x.c) {
            if v % pk != 0 {
                return None;
            }
            *o = v / pk;
        }
        Some(out)
    }

    /// Reduces all coordinates modulo p^k (k ≤ M).
    pub fn truncate_digits(&self, x: &CycloPadic, k: u32) -> CycloPadic {
        let pk = self.0.p.pow(k.min(self.0.digits));
        CycloPadic {
            c: x.c.iter().map(|&v| v % pk).collect(),
        }
    }

    /// v_p(x) = min_i (v_p(c_i) + i/e), exact unless x ≡ 0 mod p^M.
    pub fn valuation(&self, x: &CycloPadic) -> PadicValuation {
        let a = self.a();
        let e = self.0.e as i64;
        let mut best: Option<Rational> = None;
        for i in 0..self.0.e {
            let v = x.c[i * a..(i + 1) * a]
                .iter()
                .filter_map(|&c| vp_u64(c, self.0.p))
                .min();
            if let Some(v) = v {
                let val = Rational::new(v as i64 * e + i as i64, e);
                if best.is_none_or(|b| val < b) {
                    best = Some(val);
                }
            }
        }
        match best {
            Some(v) => PadicValuation::Finite(v),
            None => PadicValuation::AtLeast(Rational::from_integer(self.0.digits as i64)),
        }
    }

    /// Equality modulo p^k in every coordinate.
    pub fn congruent(&self, x: &CycloPadic, y: &CycloPadic, k: u32) -> bool {
        let pk = self.0.p.pow(k.min(self.0.digits));
        x.c.iter().zip(&y.c).all(|(&a, &b)| a % pk == b % pk)
    }

    /// Coordinates as signed residues, for display.
    pub fn signed_coeffs(&self, x: &CycloPadic) -> Vec<i64> {
        let pm = self.0.pm;
        x.c.iter()
            .map(|&v| {
                if v > pm / 2 {
                    -((pm - v) as i64)
                } else {
                    v as i64
                }
            })
            .collect()
    }

    /// Reduces a rational p-integral number into the ring.
    pub fn from_rational(&self, num: &BigInt, den: &BigInt) -> Result<CycloPadic> {
        let pm = self.0.pm;
        let d = big_mod(den, pm);
        if d % self.0.p == 0 {
            return Err(Error::invariant("rational is not p-integral"));
        }
        let dinv = inverse_mod(d, pm).ok_or_else(|| Error::invariant("non-invertible denominator"))?;
        let n = big_mod(num, pm);
        let mut z = self.zero();
        z.c[0] = mulmod(n, dinv, pm);
        Ok(z)
    }
}

pub(crate) fn big_mod(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

fn scale_big(gr: &GaloisRing, x: &GaloisRingElement, k: &BigInt, pm: u64) -> GaloisRingElement {
    let k = big_mod(k, pm);
    let coeffs: Vec<u64> = x
        .coeffs()
        .iter()
        .map(|&c| mulmod(c, k, pm))
        .collect();
    gr.from_coeffs(&coeffs)
}

pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: u32, digits: u32) -> PadicRing {
        let k = FieldDesc::prime_field(p).unwrap();
        let g = k.multiplicative_generator();
        PadicRing::new(&k, n, digits, &g).unwrap()
    }

    #[test]
    fn uniformizer_has_valuation_one_over_e() {
        let r = ring(3, 2, 10);
        let x = r.uniformizer();
        assert_eq!(r.valuation(&x), PadicValuation::Finite(Rational::new(1, 6)));
        assert_eq!(r.valuation(&r.from_int(9)), PadicValuation::Finite(Rational::from_integer(2)));
        // ζ_9^9 = 1
        assert_eq!(r.zeta_power(9), r.one());
        // v(1 - ζ_9^3) = 1/2
        let y = r.sub(&r.one(), &r.zeta_power(3));
        assert_eq!(r.valuation(&y), PadicValuation::Finite(Rational::new(1, 2)));
    }

    #[test]
    fn exact_to_padic_is_a_ring_map() {
        let f9 = FieldDesc::from_modulus(3, vec![1, 0, 1]).unwrap();
        let g = f9.multiplicative_generator();
        let pr = PadicRing::new(&f9, 1, 8, &g).unwrap();
        let cr = CycloRing::new(3, 1, 8).unwrap();
        let a = cr.add(&cr.root_of_unity(1, 3), &cr.from_int(4));
        let b = cr.sub(&cr.root_of_unity(2, 5), &cr.root_of_unity(0, 1));
        let lhs = pr.from_exact(&cr, &cr.mul(&a, &b)).unwrap();
        let rhs = pr.mul(&pr.from_exact(&cr, &a).unwrap(), &pr.from_exact(&cr, &b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(pr.from_exact(&cr, &cr.root_of_unity(0, 1)).unwrap(), pr.teichmuller(&g));
    }

    #[test]
    fn unit_inverse() {
        let r = ring(5, 2, 6);
        let u = r.add(&r.from_int(3), &r.mul(&r.uniformizer(), &r.from_int(7)));
        let ui = r.inv_unit(&u).unwrap();
        assert_eq!(r.mul(&u, &ui), r.one());
        assert!(r.inv_unit(&r.uniformizer()).is_none());
    }
}
