//! Exact elements of Z[ζ_{p^n}, ζ_{q-1}].
//!
//! Basis x^i z^j with x = ζ_{p^n} − 1, i < e = p^{n-1}(p−1), and z = ζ_{q-1},
//! j < φ(q−1). Relations: Φ_{p^n}(1+x) = 0 (Eisenstein in x) and Φ_{q-1}(z) = 0.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

struct Inner {
    p: u64,
    n: u32,
    pn: u64,
    e: usize,
    t: u64,
    phi: usize,
    /// Coefficients of Φ_{p^n}(1+x), monic of degree e.
    eis: Vec<BigInt>,
    /// Coefficients of Φ_t(z), monic of degree φ(t).
    cyc: Vec<i64>,
    /// (1+x)^w reduced, for w < p^n.
    zeta_pn: Vec<Vec<BigInt>>,
    /// z^j reduced, for j < t.
    zeta_t: Vec<Vec<i64>>,
}

/// Arithmetic context for Z[ζ_{p^n}, ζ_t].
#[derive(Clone)]
pub struct CycloRing(Arc<Inner>);

impl fmt::Debug for CycloRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloRing")
            .field("p", &self.0.p)
            .field("n", &self.0.n)
            .field("t", &self.0.t)
            .finish()
    }
}

/// An element of Z[ζ_{p^n}, ζ_t] in the x^i z^j basis, index i·φ(t) + j.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloInt {
    pub(crate) c: Vec<BigInt>,
}

impl CycloInt {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0));
    q
}

/// Cyclotomic polynomial Φ_t over Z, low degree first.
pub(crate) fn cyclotomic_poly(t: u64) -> Vec<i64> {
    let mut num = vec![0i64; t as usize + 1];
    num[0] = -1;
    num[t as usize] = 1;
    let mut acc = num;
    for d in 1..t {
        if t % d == 0 {
            acc = poly_div_exact_i64(&acc, &cyclotomic_poly(d));
        }
    }
    acc
}

pub fn euler_phi(mut t: u64) -> u64 {
    let mut result = t;
    let mut d = 2;
    while d * d <= t {
        if t % d == 0 {
            while t % d == 0 {
                t /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if t > 1 {
        result -= result / t;
    }
    result
}

fn binomial_row(k: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = row[i as usize].clone() * BigInt::from(k - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

impl CycloRing {
    /// Z[ζ_{p^n}, ζ_t] for prime p, n ≥ 1 and t ≥ 1 coprime to p.
    pub fn new(p: u64, n: u32, t: u64) -> Result<Self> {
        if n == 0 || t == 0 || t % p == 0 {
            return Err(Error::input("need n >= 1 and p not dividing the tame order"));
        }
        let pn = p.pow(n);
        let pn1 = p.pow(n - 1);
        let e = (pn1 * (p - 1)) as usize;
        // Φ_{p^n}(1+x) = Σ_{k<p} (1+x)^{k p^{n-1}}
        let mut eis = vec![BigInt::zero(); e + 1];
        for k in 0..p {
            for (i, b) in binomial_row(k * pn1).into_iter().enumerate() {
                eis[i] += b;
            }
        }
        let cyc = cyclotomic_poly(t);
        let phi = cyc.len() - 1;
        let mut ring = CycloRing(Arc::new(Inner {
            p,
            n,
            pn,
            e,
            t,
            phi,
            eis,
            cyc,
            zeta_pn: Vec::new(),
            zeta_t: Vec::new(),
        }));
        let mut zeta_pn = Vec::with_capacity(pn as usize);
        let mut cur = {
            let mut v = vec![BigInt::zero(); e];
            v[0] = BigInt::one();
            v
        };
        for _ in 0..pn {
            zeta_pn.push(cur.clone());
            // multiply by 1 + x
            let mut next = cur.clone();
            for i in (0..e).rev() {
                if i + 1 < e {
                    let add = cur[i].clone();
                    next[i + 1] += add;
                } else {
                    let top = cur[i].clone();
                    for (j, c) in ring.0.eis[..e].iter().enumerate() {
                        next[j] -= &top * c;
                    }
                }
            }
            cur = next;
        }
        let mut zeta_t = Vec::with_capacity(t as usize);
        let mut zc = vec![0i64; phi];
        zc[0] = 1;
        for _ in 0..t {
            zeta_t.push(zc.clone());
            let top = zc[phi - 1];
            let mut next = vec![0i64; phi];
            for j in (1..phi).rev() {
                next[j] = zc[j - 1];
            }
            for j in 0..phi {
                next[j] -= top * ring.0.cyc[j];
            }
            zc = next;
        }
        let inner = Arc::get_mut(&mut ring.0).expect("unshared");
        inner.zeta_pn = zeta_pn;
        inner.zeta_t = zeta_t;
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// Ramification index e = φ(p^n).
    pub fn e(&self) -> usize {
        self.0.e
    }

    /// Order t of the tame root of unity.
    pub fn tame_order(&self) -> u64 {
        self.0.t
    }

    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn eisenstein(&self) -> &[BigInt] {
        &self.0.eis
    }

    pub fn tame_cyclotomic(&self) -> &[i64] {
        &self.0.cyc
    }

    fn dim(&self) -> usize {
        self.0.e * self.0.phi
    }

    pub fn zero(&self) -> CycloInt {
        CycloInt {
            c: vec![BigInt::zero(); self.dim()],
        }
    }

    pub fn from_int(&self, v: impl Into<BigInt>) -> CycloInt {
        let mut z = self.zero();
        z.c[0] = v.into();
        z
    }

    pub fn one(&self) -> CycloInt {
        self.from_int(1)
    }

    /// ζ_{p^n}^w ζ_t^j.
    pub fn root_of_unity(&self, w: i64, j: i64) -> CycloInt {
        let w = w.rem_euclid(self.0.pn as i64) as usize;
        let j = j.rem_euclid(self.0.t as i64) as usize;
        let phi = self.0.phi;
        let mut z = self.zero();
        for (i, xv) in self.0.zeta_pn[w].iter().enumerate() {
            if xv.is_zero() {
                continue;
            }
            for (k, &zv) in self.0.zeta_t[j].iter().enumerate() {
                if zv != 0 {
                    z.c[i * phi + k] += xv * zv;
                }
            }
        }
        z
    }

    /// Σ counts[w][j] ζ_{p^n}^w ζ_t^j for a p^n × t table of counts.
    pub fn from_histogram(&self, counts: &[Vec<i64>]) -> CycloInt {
        let phi = self.0.phi;
        let mut z = self.zero();
        for (w, row) in counts.iter().enumerate() {
            let mut zpart = vec![0i128; phi];
            let mut any = false;
            for (j, &cnt) in row.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                any = true;
                for (k, &zv) in self.0.zeta_t[j].iter().enumerate() {
                    zpart[k] += cnt as i128 * zv as i128;
                }
            }
            if !any {
                continue;
            }
            for (i, xv) in self.0.zeta_pn[w].iter().enumerate() {
                if xv.is_zero() {
                    continue;
                }
                for (k, &zp) in zpart.iter().enumerate() {
                    if zp != 0 {
                        z.c[i * phi + k] += xv * BigInt::from(zp);
                    }
                }
            }
        }
        z
    }

    pub fn add(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        CycloInt {
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        CycloInt {
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CycloInt) -> CycloInt {
        CycloInt {
            c: a.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &CycloInt, k: &BigInt) -> CycloInt {
        CycloInt {
            c: a.c.iter().map(|x| x * k).collect(),
        }
    }

    /// a / k if every coordinate is divisible by k.
    pub fn div_exact(&self, a: &CycloInt, k: &BigInt) -> Option<CycloInt> {
        let mut out = Vec::with_capacity(a.c.len());
        for x in &a.c {
            let (q, r) = x.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CycloInt { c: out })
    }

    pub fn mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        let e = self.0.e;
        let phi = self.0.phi;
        let rows = 2 * e - 1;
        let cols = 2 * phi - 1;
        let mut grid = vec![BigInt::zero(); rows * cols];
        let nz_b: Vec<(usize, usize, &BigInt)> = (0..e)
            .flat_map(|i| (0..phi).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = &b.c[i * phi + j];
                (!v.is_zero()).then_some((i, j, v))
            })
            .collect();
        for i1 in 0..e {
            for j1 in 0..phi {
                let x = &a.c[i1 * phi + j1];
                if x.is_zero() {
                    continue;
                }
                for &(i2, j2, y) in &nz_b {
                    grid[(i1 + i2) * cols + j1 + j2] += x * y;
                }
            }
        }
        // reduce z-degree with the monic Φ_t
        for i in 0..rows {
            for k in (phi..cols).rev() {
                let top = core::mem::take(&mut grid[i * cols + k]);
                if top.is_zero() {
                    continue;
                }
                for (j, &cj) in self.0.cyc[..phi].iter().enumerate() {
                    if cj != 0 {
                        grid[i * cols + k - phi + j] -= &top * cj;
                    }
                }
            }
        }
        // reduce x-degree with the monic Eisenstein polynomial
        for k in (e..rows).rev() {
            for j in 0..phi {
                let top = core::mem::take(&mut grid[k * cols + j]);
                if top.is_zero() {
                    continue;
                }
                for (i, ci) in self.0.eis[..e].iter().enumerate() {
                    if !ci.is_zero() {
                        grid[(k - e + i) * cols + j] -= &top * ci;
                    }
                }
            }
        }
        let mut out = self.zero();
        for i in 0..e {
            for j in 0..phi {
                out.c[i * phi + j] = core::mem::take(&mut grid[i * cols + j]);
            }
        }
        out
    }

    pub fn pow(&self, a: &CycloInt, mut k: u64) -> CycloInt {
        let mut result = self.one();
        let mut base = a.clone();
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

    /// The rational integer represented by `a`, if it lies in Z.
    pub fn as_integer(&self, a: &CycloInt) -> Option<BigInt> {
        a.c[1..].iter().all(|v| v.is_zero()).then(|| a.c[0].clone())
    }

    /// Largest absolute coordinate, as a crude size measure.
    pub fn height(&self, a: &CycloInt) -> BigInt {
        a.c.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// Image under the automorphism ζ_{p^n} ↦ ζ_{p^n}^u, ζ_t ↦ ζ_t^v (u, v units).
    pub fn galois_action(&self, a: &CycloInt, u: i64, v: i64) -> CycloInt {
        // express a as Σ c_{w,j} ζ^w z^j in the power basis first
        let e = self.0.e;
        let phi = self.0.phi;
        let mut out = self.zero();
        // x^i = (ζ − 1)^i expands via binomials; ζ^w for w ≥ e needs reduction,
        // which `root_of_unity` provides.
        for i in 0..e {
            let binom = binomial_row(i as u64);
            for j in 0..phi {
                let c = &a.c[i * phi + j];
                if c.is_zero() {
                    continue;
                }
                for (k, b) in binom.iter().enumerate() {
                    let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                    let coeff = c * b * sign;
                    let term = self.root_of_unity(u * k as i64, v * j as i64);
                    out = self.add(&out, &self.scale(&term, &coeff));
                }
            }
        }
        out
    }

    /// Element with the given coordinates, in the layout of `CycloInt::coeffs`.
    pub fn from_coeffs(&self, coeffs: Vec<BigInt>) -> Result<CycloInt> {
        if coeffs.len() != self.dim() {
            return Err(Error::input(alloc::format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        Ok(CycloInt { c: coeffs })
    }

    /// Coordinates as i64 when they all fit.
    pub fn to_i64_coeffs(&self, a: &CycloInt) -> Option<Vec<i64>> {
        a.c.iter().map(|v| v.to_i64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(24).len() - 1, 8);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn roots_of_unity_multiply() {
        let r = CycloRing::new(3, 2, 8).unwrap();
        for (w1, j1, w2, j2) in [(1, 1, 2, 3), (5, 7, 8, 6), (4, 0, 5, 0)] {
            let a = r.root_of_unity(w1, j1);
            let b = r.root_of_unity(w2, j2);
            assert_eq!(r.mul(&a, &b), r.root_of_unity(w1 + w2, j1 + j2));
        }
        // sum of all p^n-th roots of unity vanishes
        let mut s = r.zero();
        for w in 0..9 {
            s = r.add(&s, &r.root_of_unity(w, 0));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn gauss_sum_has_absolute_square_p() {
        // g = Σ_{x∈F_5^×} ω(x)^{-1} ζ_5^x with ω of order 4; g·ḡ = 5.
        let r = CycloRing::new(5, 1, 4).unwrap();
        // 2 generates F_5^×: dlog table
        let dlog = [0i64, 0, 1, 3, 2];
        let mut g = r.zero();
        let mut gbar = r.zero();
        for x in 1..5i64 {
            g = r.add(&g, &r.root_of_unity(x, -dlog[x as usize]));
            gbar = r.add(&gbar, &r.root_of_unity(-x, dlog[x as usize]));
        }
        assert_eq!(r.as_integer(&r.mul(&g, &gbar)), Some(BigInt::from(5)));
        assert_eq!(r.galois_action(&g, -1, -1), gbar);
    }
}
