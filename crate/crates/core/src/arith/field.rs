//! Finite fields F_{p^m} = F_p[θ]/(f) with elements in the power basis.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use smallvec::SmallVec;

use super::fp_poly;
use crate::{Error, Result};

pub(crate) type Coeffs = SmallVec<[u32; 16]>;

/// Element of F_{p^m}: coordinates in the basis 1, θ, …, θ^{m-1}, each in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) Coeffs);

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// An F_p-linear endomorphism of F_{p^m}, stored by the images of θ^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    cols: Vec<Coeffs>,
    p: u32,
}

impl LinearMap {
    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        let m = self.cols.len();
        let mut acc = [0u64; 64];
        let acc = &mut acc[..m.min(64)];
        if m > 64 {
            return self.apply_slow(a);
        }
        for (j, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &v) in self.cols[j].iter().enumerate() {
                acc[i] += c as u64 * v as u64;
            }
        }
        FieldElement(acc.iter().map(|&v| (v % self.p as u64) as u32).collect())
    }

    fn apply_slow(&self, a: &FieldElement) -> FieldElement {
        let m = self.cols.len();
        let mut acc = vec![0u64; m];
        for (j, &c) in a.0.iter().enumerate() {
            for (i, &v) in self.cols[j].iter().enumerate() {
                acc[i] = (acc[i] + c as u64 * v as u64) % self.p as u64;
            }
        }
        FieldElement(acc.iter().map(|&v| v as u32).collect())
    }

    /// The map `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let cols = other
            .cols
            .iter()
            .map(|c| self.apply(&FieldElement(c.clone())).0)
            .collect();
        LinearMap { cols, p: self.p }
    }

    pub fn identity(m: usize, p: u32) -> LinearMap {
        let cols = (0..m)
            .map(|j| {
                let mut c: Coeffs = SmallVec::from_elem(0, m);
                c[j] = 1;
                c
            })
            .collect();
        LinearMap { cols, p }
    }

    pub fn pow(&self, mut k: u64) -> LinearMap {
        let mut result = LinearMap::identity(self.cols.len(), self.p);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        result
    }
}

struct Inner {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    /// θ^{m+k} mod f for k in 0..m-1.
    reduce: Vec<Coeffs>,
    frob: LinearMap,
    /// Tr_{F_{p^m}/F_p}(θ^j).
    traces: Vec<u32>,
    seed: Option<u64>,
}

/// A finite field F_{p^m} presented by a monic irreducible modulus over F_p.
///
/// Cheap to clone. Two descriptors are equal iff they have the same prime and modulus.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

pub(crate) fn is_small_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Power sums Σ root^j for j < m of the roots of a monic polynomial, mod `modulus`.
///
/// Newton's identities without division; valid over any commutative ring.
pub(crate) fn power_sums(f: &[u64], modulus: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let md = modulus as u128;
    // e_k = (-1)^k c_{m-k}
    let e: Vec<u64> = (0..=m)
        .map(|k| {
            let c = f[m - k] % modulus;
            if k % 2 == 1 {
                (modulus - c) % modulus
            } else {
                c
            }
        })
        .collect();
    let mut ps = vec![0u64; m.max(1)];
    ps[0] = (m as u64) % modulus;
    for k in 1..m {
        // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut acc: u128 = 0;
        for i in 1..k {
            let term = e[i] as u128 * ps[k - i] as u128 % md;
            acc = (if i % 2 == 1 { acc + term } else { acc + md - term }) % md;
        }
        let term = (k as u128 % md) * e[k] as u128 % md;
        acc = (if k % 2 == 1 { acc + term } else { acc + md - term }) % md;
        ps[k] = acc as u64;
    }
    ps
}

impl FieldDesc {
    /// The prime field F_p, presented as F_p[θ]/(θ).
    pub fn prime_field(p: u32) -> Result<Self> {
        Self::from_modulus(p, vec![0, 1])
    }

    /// Field with the given monic irreducible modulus (coefficients low degree first).
    pub fn from_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        Self::build(p, modulus, None)
    }

    /// F_{p^m} with a modulus drawn by a seeded search.
    pub fn random(p: u32, m: usize, seed: u64) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::input(alloc::format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::input("field degree must be positive"));
        }
        if m == 1 {
            return Self::prime_field(p);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 40) ^ ((m as u64) << 20));
        loop {
            let mut f: Vec<u32> = (0..m).map(|_| rng.next_u32() % p).collect();
            f.push(1);
            if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
                return Self::build(p, f, Some(seed));
            }
        }
    }

    fn build(p: u32, mut modulus: Vec<u32>, seed: Option<u64>) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::input(alloc::format!("{p} is not prime")));
        }
        if p > 65_521 {
            return Err(Error::Unsupported(alloc::format!("prime {p} too large")));
        }
        for c in modulus.iter_mut() {
            *c %= p;
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::input("field modulus must be monic of degree >= 1"));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::input(alloc::format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let m = modulus.len() - 1;
        // θ^{m+k} mod f
        let mut reduce: Vec<Coeffs> = Vec::with_capacity(m.saturating_sub(1));
        let mut cur: Coeffs = modulus[..m].iter().map(|&c| (p - c) % p).collect();
        for _ in 0..m.saturating_sub(1) {
            reduce.push(cur.clone());
            // multiply by θ
            let top = cur[m - 1];
            let mut next: Coeffs = SmallVec::from_elem(0, m);
            for i in (1..m).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..m {
                next[i] = ((next[i] as u64 + top as u64 * ((p - modulus[i]) % p) as u64) % p as u64) as u32;
            }
            cur = next;
        }
        let traces = power_sums(
            &modulus.iter().map(|&c| c as u64).collect::<Vec<_>>(),
            p as u64,
        )
        .into_iter()
        .map(|v| v as u32)
        .collect();
        let mut inner = Inner {
            p,
            m,
            modulus,
            reduce,
            frob: LinearMap::identity(m, p),
            traces,
            seed,
        };
        // Frobenius columns (θ^j)^p.
        let tmp = FieldDesc(Arc::new(Inner {
            p,
            m,
            modulus: inner.modulus.clone(),
            reduce: inner.reduce.clone(),
            frob: LinearMap::identity(m, p),
            traces: inner.traces.clone(),
            seed,
        }));
        let theta_p = tmp.pow(&tmp.theta(), p as u128);
        let mut cols = Vec::with_capacity(m);
        let mut cur = tmp.one();
        for _ in 0..m {
            cols.push(cur.0.clone());
            cur = tmp.mul(&cur, &theta_p);
        }
        inner.frob = LinearMap { cols, p };
        Ok(FieldDesc(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree m over F_p.
    pub fn degree(&self) -> usize {
        self.0.m
    }

    /// Field size p^m; saturates at u128::MAX.
    pub fn order(&self) -> u128 {
        (self.0.p as u128).checked_pow(self.0.m as u32).unwrap_or(u128::MAX)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn seed(&self) -> Option<u64> {
        self.0.seed
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(SmallVec::from_elem(0, self.0.m))
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.0.p as i64) as u32;
        e
    }

    /// θ, the class of x.
    pub fn theta(&self) -> FieldElement {
        let mut e = self.zero();
        if self.0.m == 1 {
            // θ is the root of the linear modulus x + c0.
            e.0[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            e.0[1] = 1;
        }
        e
    }

    /// Element from coordinates; missing coordinates are zero, values reduced mod p.
    pub fn element(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m {
            return Err(Error::input(alloc::format!(
                "field element has {} coordinates, field degree is {}",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut e = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            e.0[i] = c.rem_euclid(self.0.p as i64) as u32;
        }
        Ok(e)
    }

    /// The element whose base-p digits (least significant first) are its coordinates.
    pub fn from_index(&self, mut idx: u128) -> FieldElement {
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = (idx % self.0.p as u128) as u32;
            idx /= self.0.p as u128;
        }
        e
    }

    pub fn index(&self, a: &FieldElement) -> u128 {
        a.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.0.p as u128 + c as u128)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn scale(&self, a: &FieldElement, k: i64) -> FieldElement {
        let p = self.0.p as u64;
        let k = k.rem_euclid(p as i64) as u64;
        FieldElement(a.0.iter().map(|&x| (x as u64 * k % p) as u32).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.0.m;
        let p = self.0.p as u64;
        if m == 1 {
            let mut e = self.zero();
            e.0[0] = (a.0[0] as u64 * b.0[0] as u64 % p) as u32;
            return e;
        }
        let mut prod = [0u64; 128];
        if 2 * m - 1 > prod.len() {
            return self.mul_slow(a, b);
        }
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        for k in m..2 * m - 1 {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            for (i, &r) in self.0.reduce[k - m].iter().enumerate() {
                prod[i] += c * r as u64;
            }
        }
        FieldElement(prod[..m].iter().map(|&v| (v % p) as u32).collect())
    }

    fn mul_slow(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.0.m;
        let p = self.0.p as u64;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in m..2 * m - 1 {
            let c = prod[k];
            for (i, &r) in self.0.reduce[k - m].iter().enumerate() {
                prod[i] = (prod[i] + c * r as u64) % p;
            }
        }
        FieldElement(prod[..m].iter().map(|&v| v as u32).collect())
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let p = self.0.p;
        // extended Euclid on (a, f) in F_p[x]
        let mut r0: Vec<u32> = self.0.modulus.clone();
        let mut r1: Vec<u32> = a.0.to_vec();
        fp_poly::trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = fp_poly::sub(&s0, &fp_poly::mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant
        let c = fp_poly::inv_mod_p(r0[0], p) as u64;
        let mut out = self.zero();
        for (i, &v) in s0.iter().enumerate() {
            out.0[i] = (v as u64 * c % p as u64) as u32;
        }
        Some(out)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The absolute Frobenius x ↦ x^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.0.frob.apply(a)
    }

    pub fn frobenius_map(&self) -> &LinearMap {
        &self.0.frob
    }

    /// x ↦ x^{p^k}; negative k gives inverse powers.
    pub fn frobenius_pow(&self, a: &FieldElement, k: i64) -> FieldElement {
        let m = self.0.m as i64;
        let k = k.rem_euclid(m);
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, a: &FieldElement) -> u32 {
        let p = self.0.p as u64;
        (a.0.iter()
            .zip(self.0.traces.iter())
            .map(|(&x, &t)| x as u64 * t as u64)
            .sum::<u64>()
            % p) as u32
    }

    /// Absolute norm to F_p.
    pub fn norm(&self, a: &FieldElement) -> u32 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.0.m {
            cur = self.frobenius(&cur);
            acc = self.mul(&acc, &cur);
        }
        acc.0[0]
    }

    /// Whether `a` lies in the prime field.
    pub fn is_prime_field_element(&self, a: &FieldElement) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// Iterator over all field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// A generator of the multiplicative group, the smallest by index.
    pub fn multiplicative_generator(&self) -> FieldElement {
        let order = self.order() - 1;
        let primes = prime_factors_u128(order);
        for idx in 1..self.order() {
            let g = self.from_index(idx);
            if primes
                .iter()
                .all(|&r| self.pow(&g, order / r) != self.one())
            {
                return g;
            }
        }
        unreachable!("finite field has a primitive element")
    }
}

pub(crate) fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    fp_poly::trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_poly::inv_mod_p(b[db], p) as u64;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        q[top - db] = c as u32;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = top - db + j;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * bj as u64) % p as u64) as u32;
            }
        }
        r.pop();
        fp_poly::trim(&mut r);
    }
    fp_poly::trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldDesc {
        FieldDesc::from_modulus(3, vec![1, 0, 1]).unwrap()
    }

    #[test]
    fn inverse_round_trips_in_f9() {
        let k = f9();
        for x in k.elements().skip(1) {
            let xi = k.inv(&x).unwrap();
            assert_eq!(k.mul(&x, &xi), k.one());
        }
        assert!(k.inv(&k.zero()).is_none());
    }

    #[test]
    fn frobenius_matches_power() {
        let k = FieldDesc::random(5, 3, 7).unwrap();
        for idx in [1u128, 17, 42, 99, 124] {
            let x = k.from_index(idx);
            assert_eq!(k.frobenius(&x), k.pow(&x, 5));
            assert_eq!(k.frobenius_pow(&x, 3), x);
            assert_eq!(k.frobenius_pow(&k.frobenius_pow(&x, -1), 1), x);
        }
    }

    #[test]
    fn trace_is_sum_of_conjugates() {
        let k = FieldDesc::random(3, 4, 11).unwrap();
        for idx in [0u128, 5, 33, 80] {
            let x = k.from_index(idx);
            let mut s = k.zero();
            let mut c = x.clone();
            for _ in 0..4 {
                s = k.add(&s, &c);
                c = k.frobenius(&c);
            }
            assert!(k.is_prime_field_element(&s));
            assert_eq!(s.0[0], k.trace(&x));
        }
    }

    #[test]
    fn generator_has_full_order() {
        let k = f9();
        let g = k.multiplicative_generator();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut x = k.one();
        for _ in 0..8 {
            seen.insert(k.index(&x));
            x = k.mul(&x, &g);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FieldDesc::from_modulus(3, vec![2, 0, 1]).is_err());
        assert!(FieldDesc::prime_field(4).is_err());
    }
}
