//! Galois rings GR(p^n, m) = (Z/p^n)[X]/(f̂), a model of the Witt vectors W_n(F_{p^m}).
//!
//! f̂ is the coordinatewise lift of the field modulus. The ring is étale over
//! Z/p^n, so the trace is Z/p^n-linear and is read off from power sums of the
//! roots of f̂.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use super::field::{power_sums, FieldDesc, FieldElement};
use crate::{Error, Result};

pub(crate) type Words = SmallVec<[u64; 16]>;

/// Element of a Galois ring: coordinates in the basis 1, X, …, X^{m-1}, each in [0, p^n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaloisRingElement(pub(crate) Words);

impl GaloisRingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GaloisRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

#[inline]
pub(crate) fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// p-adic valuation of a nonzero residue; `None` for zero.
pub(crate) fn vp_u64(mut x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

struct Inner {
    field: FieldDesc,
    n: u32,
    p: u64,
    pn: u64,
    m: usize,
    modulus: Vec<u64>,
    /// X^{m+k} mod f̂ for k in 0..m-1.
    reduce: Vec<Words>,
    /// σ(X)^j, the Frobenius images of the basis.
    frob: Vec<Words>,
    traces: Vec<u64>,
}

/// The Galois ring of characteristic p^n with residue field `field`.
#[derive(Clone)]
pub struct GaloisRing(Arc<Inner>);

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisRing")
            .field("p", &self.0.p)
            .field("n", &self.0.n)
            .field("m", &self.0.m)
            .finish()
    }
}

impl GaloisRing {
    /// GR(p^n, m) over the given residue field. Requires p^n < 2^63.
    pub fn new(field: &FieldDesc, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("Witt length must be positive"));
        }
        let p = field.p() as u64;
        let pn = p
            .checked_pow(n)
            .filter(|&v| v < (1u64 << 63))
            .ok_or_else(|| Error::Precision(alloc::format!("{p}^{n} exceeds 63 bits")))?;
        let m = field.degree();
        let modulus: Vec<u64> = field.modulus().iter().map(|&c| c as u64).collect();
        let mut reduce: Vec<Words> = Vec::new();
        let mut cur: Words = modulus[..m].iter().map(|&c| (pn - c) % pn).collect();
        for _ in 0..m.saturating_sub(1) {
            reduce.push(cur.clone());
            let top = cur[m - 1];
            let mut next: Words = SmallVec::from_elem(0, m);
            for i in (1..m).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..m {
                next[i] = addmod(next[i], mulmod(top, (pn - modulus[i]) % pn, pn), pn);
            }
            cur = next;
        }
        let traces = power_sums(&modulus, pn);
        let mut ring = GaloisRing(Arc::new(Inner {
            field: field.clone(),
            n,
            p,
            pn,
            m,
            modulus,
            reduce,
            frob: Vec::new(),
            traces,
        }));
        let sigma_x = ring.frobenius_of_generator()?;
        let mut frob = Vec::with_capacity(m);
        let mut c = ring.one();
        for _ in 0..m {
            frob.push(c.0.clone());
            c = ring.mul(&c, &sigma_x);
        }
        Arc::get_mut(&mut ring.0).expect("unshared").frob = frob;
        Ok(ring)
    }

    /// The root of f̂ congruent to X^p, by Newton iteration.
    fn frobenius_of_generator(&self) -> Result<GaloisRingElement> {
        let x = self.generator();
        let mut r = self.pow(&x, self.0.p as u128);
        let deriv: Vec<u64> = (1..self.0.modulus.len())
            .map(|i| mulmod(i as u64 % self.0.pn, self.0.modulus[i], self.0.pn))
            .collect();
        for _ in 0..64 {
            let fr = self.eval_poly(&self.0.modulus, &r);
            if fr.is_zero() {
                return Ok(r);
            }
            let dr = self.eval_poly(&deriv, &r);
            let dinv = self
                .inv_unit(&dr)
                .ok_or_else(|| Error::invariant("field modulus is not separable"))?;
            r = self.sub(&r, &self.mul(&fr, &dinv));
        }
        Err(Error::Convergence("Frobenius lift did not converge".into()))
    }

    fn eval_poly(&self, coeffs: &[u64], x: &GaloisRingElement) -> GaloisRingElement {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            acc.0[0] = addmod(acc.0[0], c % self.0.pn, self.0.pn);
        }
        acc
    }

    pub fn field(&self) -> &FieldDesc {
        &self.0.field
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Witt length n.
    pub fn length(&self) -> u32 {
        self.0.n
    }

    /// The characteristic p^n.
    pub fn modulus_int(&self) -> u64 {
        self.0.pn
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn zero(&self) -> GaloisRingElement {
        GaloisRingElement(SmallVec::from_elem(0, self.0.m))
    }

    pub fn one(&self) -> GaloisRingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> GaloisRingElement {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.0.pn as i64) as u64;
        e
    }

    pub fn from_coeffs(&self, c: &[u64]) -> GaloisRingElement {
        let mut e = self.zero();
        for (slot, &v) in e.0.iter_mut().zip(c) {
            *slot = v % self.0.pn;
        }
        e
    }

    /// The class of X (a lift of θ).
    pub fn generator(&self) -> GaloisRingElement {
        if self.0.m == 1 {
            return self.from_int(-(self.0.modulus[0] as i64));
        }
        let mut e = self.zero();
        e.0[1] = 1;
        e
    }

    /// Coordinatewise lift from the residue field.
    pub fn lift(&self, a: &FieldElement) -> GaloisRingElement {
        GaloisRingElement(a.coeffs().iter().map(|&c| c as u64).collect())
    }

    /// Reduction modulo p.
    pub fn reduce(&self, a: &GaloisRingElement) -> FieldElement {
        let p = self.0.p;
        let mut out = self.0.field.zero();
        for (slot, &c) in out.0.iter_mut().zip(a.0.iter()) {
            *slot = (c % p) as u32;
        }
        out
    }

    /// (a / p^k) mod p, for `a` divisible by p^k.
    pub fn reduce_divided(&self, a: &GaloisRingElement, k: u32) -> FieldElement {
        let p = self.0.p;
        let pk = p.pow(k);
        let mut out = self.0.field.zero();
        for (slot, &c) in out.0.iter_mut().zip(a.0.iter()) {
            debug_assert_eq!(c % pk, 0, "coordinate not divisible by p^{k}");
            *slot = ((c / pk) % p) as u32;
        }
        out
    }

    /// Minimum p-adic valuation of the coordinates; `None` for zero.
    pub fn valuation(&self, a: &GaloisRingElement) -> Option<u32> {
        a.0.iter().filter_map(|&c| vp_u64(c, self.0.p)).min()
    }

    pub fn add(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        let pn = self.0.pn;
        GaloisRingElement(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| addmod(x, y, pn)).collect())
    }

    pub fn sub(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        let pn = self.0.pn;
        GaloisRingElement(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| submod(x, y, pn)).collect())
    }

    pub fn neg(&self, a: &GaloisRingElement) -> GaloisRingElement {
        let pn = self.0.pn;
        GaloisRingElement(a.0.iter().map(|&x| (pn - x) % pn).collect())
    }

    pub fn scale(&self, a: &GaloisRingElement, k: i64) -> GaloisRingElement {
        let pn = self.0.pn;
        let k = k.rem_euclid(pn as i64) as u64;
        GaloisRingElement(a.0.iter().map(|&x| mulmod(x, k, pn)).collect())
    }

    pub fn mul(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        let m = self.0.m;
        let pn = self.0.pn;
        if m == 1 {
            let mut e = self.zero();
            e.0[0] = mulmod(a.0[0], b.0[0], pn);
            return e;
        }
        let mut prod: SmallVec<[u64; 32]> = SmallVec::from_elem(0, 2 * m - 1);
        if pn <= (1 << 20) {
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            for v in prod.iter_mut() {
                *v %= pn;
            }
            for k in (m..2 * m - 1).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                for (i, &r) in self.0.reduce[k - m].iter().enumerate() {
                    prod[i] += c * r;
                }
            }
            GaloisRingElement(prod[..m].iter().map(|&v| v % pn).collect())
        } else {
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    prod[i + j] = addmod(prod[i + j], mulmod(x, y, pn), pn);
                }
            }
            for k in m..2 * m - 1 {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                for (i, &r) in self.0.reduce[k - m].iter().enumerate() {
                    prod[i] = addmod(prod[i], mulmod(c, r, pn), pn);
                }
            }
            GaloisRingElement(prod[..m].iter().copied().collect())
        }
    }

    pub fn pow(&self, a: &GaloisRingElement, mut e: u128) -> GaloisRingElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Inverse of a unit (an element nonzero mod p); `None` otherwise.
    pub fn inv_unit(&self, a: &GaloisRingElement) -> Option<GaloisRingElement> {
        let field = &self.0.field;
        let w0 = field.inv(&self.reduce(a))?;
        let mut w = self.lift(&w0);
        let two = self.from_int(2);
        // Each step doubles the p-adic precision.
        let mut prec = 1u32;
        while prec < self.0.n {
            w = self.mul(&w, &self.sub(&two, &self.mul(a, &w)));
            prec *= 2;
        }
        Some(w)
    }

    /// The ring Frobenius σ, lifting x ↦ x^p.
    pub fn frobenius(&self, a: &GaloisRingElement) -> GaloisRingElement {
        let pn = self.0.pn;
        let m = self.0.m;
        let mut acc: Words = SmallVec::from_elem(0, m);
        for (j, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &v) in self.0.frob[j].iter().enumerate() {
                acc[i] = addmod(acc[i], mulmod(c, v, pn), pn);
            }
        }
        GaloisRingElement(acc)
    }

    /// σ^k for k taken modulo m.
    pub fn frobenius_pow(&self, a: &GaloisRingElement, k: i64) -> GaloisRingElement {
        let k = k.rem_euclid(self.0.m as i64);
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }

    /// The Teichmüller representative [c], computed as ĉ^{q^{n-1}}.
    pub fn teichmuller_lift(&self, c: &FieldElement) -> GaloisRingElement {
        let mut x = self.lift(c);
        for _ in 0..(self.0.n as usize - 1) * self.0.m {
            x = self.pow(&x, self.0.p as u128);
        }
        x
    }

    /// Σ p^i [a_i^{p^{-i}}]: the Witt vector (a_0, a_1, …) as a ring element.
    pub fn witt_pack(&self, coords: &[FieldElement]) -> GaloisRingElement {
        let field = &self.0.field;
        let mut acc = self.zero();
        let mut pi = 1u64;
        for (i, a) in coords.iter().enumerate().take(self.0.n as usize) {
            let root = field.frobenius_pow(a, -(i as i64));
            let t = self.teichmuller_lift(&root);
            acc = self.add(&acc, &self.scale(&t, pi as i64));
            pi = pi.saturating_mul(self.0.p);
        }
        acc
    }

    /// Witt coordinates of a ring element (inverse of `witt_pack`).
    pub fn witt_unpack(&self, z: &GaloisRingElement) -> Vec<FieldElement> {
        let field = &self.0.field;
        let mut rest = z.clone();
        let mut out = Vec::with_capacity(self.0.n as usize);
        for i in 0..self.0.n {
            let c = self.reduce_divided(&rest, i);
            let t = self.scale(&self.teichmuller_lift(&c), self.0.p.pow(i) as i64);
            rest = self.sub(&rest, &t);
            out.push(field.frobenius_pow(&c, i as i64));
        }
        out
    }

    /// Trace to Z/p^n as the sum of the Frobenius conjugates.
    pub fn witt_trace(&self, z: &GaloisRingElement) -> u64 {
        let mut acc = z.clone();
        let mut cur = z.clone();
        for _ in 1..self.0.m {
            cur = self.frobenius(&cur);
            acc = self.add(&acc, &cur);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0), "trace left Z/p^n");
        acc.0[0]
    }

    /// Trace to Z/p^n through the precomputed traces of the basis.
    pub fn trace(&self, z: &GaloisRingElement) -> u64 {
        let pn = self.0.pn;
        if pn <= (1 << 20) {
            return z
                .0
                .iter()
                .zip(self.0.traces.iter())
                .map(|(&x, &t)| x * t)
                .sum::<u64>()
                % pn;
        }
        z.0.iter()
            .zip(self.0.traces.iter())
            .fold(0, |acc, (&x, &t)| addmod(acc, mulmod(x, t, pn), pn))
    }

    /// Trace of `witt_pack(coords)` without extracting p-th roots:
    /// Tr Σ p^i [a_i^{p^{-i}}] ≡ Σ p^i Tr(â_i^{p^{n-1-i}}) mod p^n for any lifts â_i.
    pub fn packed_trace(&self, coords: &[FieldElement]) -> u64 {
        let n = self.0.n as usize;
        let pn = self.0.pn;
        let mut acc = 0u64;
        let mut pi = 1u64;
        for (i, a) in coords.iter().enumerate().take(n) {
            let t = if i + 1 == n {
                self.0.field.trace(a) as u64
            } else {
                let mut x = self.lift(a);
                for _ in 0..(n - 1 - i) {
                    x = self.pow(&x, self.0.p as u128);
                }
                self.trace(&x)
            };
            acc = addmod(acc, mulmod(t % pn, pi, pn), pn);
            pi = pi.saturating_mul(self.0.p);
        }
        acc
    }
}
