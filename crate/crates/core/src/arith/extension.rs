//! Field extensions F_{q^k} ⊃ F_q with an explicit embedding of F_q.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::field::{FieldDesc, FieldElement};
use super::fp_poly::inv_mod_p;
use crate::{Error, Result};

const DEFAULT_SEED: u64 = 0x5eed_0f_f1e1d;

/// A ring embedding F_q → F_{q^k}, given by the images of the power basis of F_q.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: FieldDesc,
    target: FieldDesc,
    images: Vec<FieldElement>,
    pivots: Vec<usize>,
    /// Inverse of the m×m submatrix of the image matrix on `pivots`, row-major.
    pivot_inv: Vec<u32>,
}

impl Embedding {
    pub fn identity(field: &FieldDesc) -> Self {
        let m = field.degree();
        let images = (0..m)
            .map(|j| {
                let mut e = field.zero();
                e.0[j] = 1;
                e
            })
            .collect();
        let mut pivot_inv = vec![0u32; m * m];
        for i in 0..m {
            pivot_inv[i * m + i] = 1;
        }
        Embedding {
            base: field.clone(),
            target: field.clone(),
            images,
            pivots: (0..m).collect(),
            pivot_inv,
        }
    }

    fn from_root(base: &FieldDesc, target: &FieldDesc, beta: &FieldElement) -> Result<Self> {
        let m = base.degree();
        let mut images = Vec::with_capacity(m);
        let mut cur = target.one();
        for _ in 0..m {
            images.push(cur.clone());
            cur = target.mul(&cur, beta);
        }
        let (pivots, pivot_inv) = left_inverse(&images, target.degree(), target.p())
            .ok_or_else(|| Error::invariant("embedding images are linearly dependent"))?;
        Ok(Embedding {
            base: base.clone(),
            target: target.clone(),
            images,
            pivots,
            pivot_inv,
        })
    }

    pub fn base(&self) -> &FieldDesc {
        &self.base
    }

    pub fn target(&self) -> &FieldDesc {
        &self.target
    }

    /// Relative degree k.
    pub fn degree(&self) -> usize {
        self.target.degree() / self.base.degree()
    }

    pub fn apply(&self, c: &FieldElement) -> FieldElement {
        let p = self.target.p() as u64;
        let mut acc = vec![0u64; self.target.degree()];
        for (j, &cj) in c.coeffs().iter().enumerate() {
            if cj == 0 {
                continue;
            }
            for (i, &v) in self.images[j].coeffs().iter().enumerate() {
                acc[i] = (acc[i] + cj as u64 * v as u64) % p;
            }
        }
        let mut out = self.target.zero();
        for (slot, v) in out.0.iter_mut().zip(acc) {
            *slot = v as u32;
        }
        out
    }

    /// Preimage of `y` if it lies in the embedded subfield.
    pub fn restrict(&self, y: &FieldElement) -> Option<FieldElement> {
        let x = self.restrict_unchecked(y);
        (self.apply(&x) == *y).then_some(x)
    }

    /// Preimage of `y`, assuming it lies in the embedded subfield.
    pub fn restrict_unchecked(&self, y: &FieldElement) -> FieldElement {
        let m = self.base.degree();
        let p = self.base.p() as u64;
        let mut out = self.base.zero();
        for i in 0..m {
            let mut acc = 0u64;
            for (j, &r) in self.pivots.iter().enumerate() {
                acc += self.pivot_inv[i * m + j] as u64 * y.coeffs()[r] as u64;
            }
            out.0[i] = (acc % p) as u32;
        }
        out
    }
}

/// Rows of the (dim × m) matrix with columns `cols` forming an invertible minor,
/// and the inverse of that minor.
fn left_inverse(cols: &[FieldElement], dim: usize, p: u32) -> Option<(Vec<usize>, Vec<u32>)> {
    let m = cols.len();
    let pp = p as u64;
    // Greedy row selection by elimination on the transpose.
    let mut pivots = Vec::with_capacity(m);
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for r in 0..dim {
        let mut row: Vec<u32> = cols.iter().map(|c| c.coeffs()[r]).collect();
        for (b, &pc) in basis.iter().zip(pivot_cols(&basis).iter()) {
            let f = row[pc] as u64;
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(b.iter()) {
                    *x = ((*x as u64 + (pp - f) * y as u64) % pp) as u32;
                }
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let inv = inv_mod_p(row[pc], p) as u64;
            for x in row.iter_mut() {
                *x = (*x as u64 * inv % pp) as u32;
            }
            basis.push(row);
            pivots.push(r);
            if pivots.len() == m {
                break;
            }
        }
    }
    if pivots.len() < m {
        return None;
    }
    // Invert the minor by Gauss–Jordan.
    let mut a: Vec<Vec<u32>> = pivots
        .iter()
        .map(|&r| {
            let mut row: Vec<u32> = cols.iter().map(|c| c.coeffs()[r]).collect();
            row.resize(2 * m, 0);
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..m {
            row[m + j] = u32::from(i == j);
        }
    }
    for col in 0..m {
        let piv = (col..m).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod_p(a[col][col], p) as u64;
        for x in a[col].iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] as u64;
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = ((*x as u64 + (pp - f) * y as u64) % pp) as u32;
                }
            }
        }
    }
    let mut inv = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            inv[i * m + j] = a[i][m + j];
        }
    }
    Some((pivots, inv))
}

fn pivot_cols(basis: &[Vec<u32>]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).unwrap_or(0))
        .collect()
}

/// Builds F_{q^k} from F_q together with an embedding, using a fixed default seed.
pub fn make_extension(base: &FieldDesc, k: usize) -> Result<(FieldDesc, Embedding)> {
    make_extension_seeded(base, k, DEFAULT_SEED)
}

/// As [`make_extension`], with an explicit seed for the modulus search.
///
/// `k = 1` returns `base` itself with the identity embedding.
pub fn make_extension_seeded(
    base: &FieldDesc,
    k: usize,
    seed: u64,
) -> Result<(FieldDesc, Embedding)> {
    if k == 0 {
        return Err(Error::input("extension degree must be positive"));
    }
    if k == 1 {
        return Ok((base.clone(), Embedding::identity(base)));
    }
    let target = FieldDesc::random(base.p(), base.degree() * k, seed)?;
    let beta = if base.degree() == 1 {
        // only β^0 = 1 is used
        target.one()
    } else {
        find_root(&target, base.modulus(), seed)?
    };
    let emb = Embedding::from_root(base, &target, &beta)?;
    Ok((target, emb))
}

type Poly = Vec<FieldElement>;

fn ptrim(a: &mut Poly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn pmul(k: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = k.add(&r[i + j], &k.mul(x, y));
        }
    }
    ptrim(&mut r);
    r
}

fn pdivrem(k: &FieldDesc, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    ptrim(&mut r);
    let db = b.len() - 1;
    let lead_inv = k.inv(&b[db]).expect("nonzero leading coefficient");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = k.mul(&r[top], &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let idx = top - db + j;
            r[idx] = k.sub(&r[idx], &k.mul(&c, bj));
        }
        q[top - db] = c;
        r.pop();
        ptrim(&mut r);
    }
    ptrim(&mut q);
    (q, r)
}

fn pgcd(k: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    ptrim(&mut x);
    ptrim(&mut y);
    while !y.is_empty() {
        let (_, r) = pdivrem(k, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = k.inv(&lead).expect("nonzero");
        for c in x.iter_mut() {
            *c = k.mul(c, &inv);
        }
    }
    x
}

fn pmulmod(k: &FieldDesc, a: &Poly, b: &Poly, f: &Poly) -> Poly {
    pdivrem(k, &pmul(k, a, b), f).1
}

fn ppowmod(k: &FieldDesc, a: &Poly, mut e: u128, f: &Poly) -> Poly {
    let mut result = vec![k.one()];
    let mut base = pdivrem(k, a, f).1;
    while e > 0 {
        if e & 1 == 1 {
            result = pmulmod(k, &result, &base, f);
        }
        base = pmulmod(k, &base, &base, f);
        e >>= 1;
    }
    result
}

/// A root in `target` of a polynomial over F_p that splits into distinct linear
/// factors there (equal-degree splitting).
fn find_root(target: &FieldDesc, g: &[u32], seed: u64) -> Result<FieldElement> {
    let k = target;
    let mut f: Poly = g.iter().map(|&c| k.from_int(c as i64)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let order = k.order();
    if order == u128::MAX {
        return Err(Error::Unsupported("extension field too large".into()));
    }
    let mut attempts = 0u32;
    while f.len() > 2 {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Error::Convergence("root search did not split".into()));
        }
        let delta = k.from_index(((rng.next_u64() as u128) << 64 | rng.next_u64() as u128) % order);
        let h = if k.p() == 2 {
            // absolute trace of δX
            let x: Poly = vec![k.zero(), delta.clone()];
            let mut acc: Poly = Vec::new();
            let mut cur = pdivrem(k, &x, &f).1;
            for _ in 0..k.degree() {
                acc = padd(k, &acc, &cur);
                cur = pmulmod(k, &cur, &cur, &f);
            }
            acc
        } else {
            let x: Poly = vec![delta, k.one()];
            let mut h = ppowmod(k, &x, (order - 1) / 2, &f);
            if h.is_empty() {
                h.push(k.zero());
            }
            h[0] = k.sub(&h[0], &k.one());
            ptrim(&mut h);
            h
        };
        let d = pgcd(k, &h, &f);
        if d.len() > 1 && d.len() < f.len() {
            let (other, _) = pdivrem(k, &f, &d);
            f = if d.len() <= other.len() { d } else { other };
            let inv = k.inv(f.last().unwrap()).expect("nonzero");
            for c in f.iter_mut() {
                *c = k.mul(c, &inv);
            }
        }
    }
    if f.len() != 2 {
        return Err(Error::invariant("polynomial has no root in the extension"));
    }
    let lead_inv = k.inv(&f[1]).expect("nonzero");
    Ok(k.neg(&k.mul(&f[0], &lead_inv)))
}

fn padd(k: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => k.zero(),
        })
        .collect();
    ptrim(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hom(emb: &Embedding) {
        let base = emb.base();
        let t = emb.target();
        let elems: Vec<FieldElement> = base.elements().take(40).collect();
        for a in &elems {
            for b in elems.iter().step_by(3) {
                assert_eq!(emb.apply(&base.mul(a, b)), t.mul(&emb.apply(a), &emb.apply(b)));
                assert_eq!(emb.apply(&base.add(a, b)), t.add(&emb.apply(a), &emb.apply(b)));
            }
            assert_eq!(emb.restrict(&emb.apply(a)).as_ref(), Some(a));
        }
        assert_eq!(emb.apply(&base.one()), t.one());
    }

    #[test]
    fn degree_one_is_identity() {
        let f3 = FieldDesc::prime_field(3).unwrap();
        let (k, emb) = make_extension(&f3, 1).unwrap();
        assert_eq!(k, f3);
        let x = f3.from_int(2);
        assert_eq!(emb.apply(&x), x);
    }

    #[test]
    fn prime_field_embeds_as_constants() {
        let f3 = FieldDesc::prime_field(3).unwrap();
        let (f9, emb) = make_extension(&f3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(emb.apply(&f3.from_int(2)), f9.from_int(2));
        check_hom(&emb);
    }

    #[test]
    fn f9_into_f729_is_a_ring_map() {
        let f9 = FieldDesc::from_modulus(3, vec![1, 0, 1]).unwrap();
        let (big, emb) = make_extension(&f9, 3).unwrap();
        assert_eq!(big.order(), 729);
        check_hom(&emb);
        let outside = big.theta();
        assert!(emb.restrict(&outside).is_none());
    }

    #[test]
    fn f25_into_f625() {
        let f25 = FieldDesc::random(5, 2, 3).unwrap();
        let (_, emb) = make_extension(&f25, 2).unwrap();
        check_hom(&emb);
    }
}
