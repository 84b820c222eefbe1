//! Truncated matrices of U_p ∘ α and their Fredholm determinants.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::splitting::SplittingSeries;
use crate::cyclotomic::{CycloPadic, PadicRing};
use crate::{Error, Result};

/// Product of two series in z^{−1}, truncated to `len` terms.
pub fn series_mul(ring: &PadicRing, a: &[CycloPadic], b: &[CycloPadic], len: usize) -> Vec<CycloPadic> {
    let mut out = vec![ring.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

/// α = unit · z^{−shift} · E_r as coefficients of z^{−m}.
pub fn twisted_multiplier(
    ring: &PadicRing,
    e_r: &SplittingSeries,
    unit: &CycloPadic,
    shift: usize,
) -> Vec<CycloPadic> {
    let mut out = vec![ring.zero(); shift];
    out.extend(e_r.coeffs.iter().map(|c| ring.mul(c, unit)));
    out
}

/// Matrix of U_p ∘ α on span{z^{−j} : 0 ≤ j < size}; entry (k, j) is the
/// coefficient α_{pk−j} of z^{−pk} in α z^{−j}.
#[derive(Clone, Debug)]
pub struct UpMatrix {
    pub size: usize,
    /// Row-major.
    pub entries: Vec<CycloPadic>,
}

impl UpMatrix {
    pub fn get(&self, k: usize, j: usize) -> &CycloPadic {
        &self.entries[k * self.size + j]
    }
}

/// Fails if α is truncated before z^{−p(size−1)}, the last coefficient an
/// entry reads.
pub fn up_matrix(ring: &PadicRing, alpha: &[CycloPadic], size: usize) -> Result<UpMatrix> {
    let p = ring.p() as usize;
    let need = p * size.saturating_sub(1) + 1;
    if alpha.len() < need {
        return Err(Error::Precision(format!(
            "multiplier known through z^-{} but the {size}x{size} matrix reads z^-{}",
            alpha.len() as i64 - 1,
            need - 1
        )));
    }
    let mut entries = Vec::with_capacity(size * size);
    for k in 0..size {
        for j in 0..size {
            entries.push(match (p * k).checked_sub(j) {
                Some(m) => alpha[m].clone(),
                None => ring.zero(),
            });
        }
    }
    Ok(UpMatrix { size, entries })
}

/// det(1 − sM) through s^d, known modulo p^digits.
#[derive(Clone, Debug)]
pub struct FredholmSeries {
    pub coeffs: Vec<CycloPadic>,
    pub digits: u32,
}

fn mat_mul(ring: &PadicRing, a: &[CycloPadic], b: &UpMatrix) -> Vec<CycloPadic> {
    let n = b.size;
    let row = |i: usize| {
        let mut out = vec![ring.zero(); n];
        for l in 0..n {
            let x = &a[i * n + l];
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let y = b.get(l, j);
                if !y.is_zero() {
                    *o = ring.add(o, &ring.mul(x, y));
                }
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<CycloPadic>> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<CycloPadic>> = (0..n).map(row).collect();
    rows.into_iter().flatten().collect()
}

/// tr(a · b).
fn trace_of_product(ring: &PadicRing, a: &[CycloPadic], b: &UpMatrix) -> CycloPadic {
    let n = b.size;
    let mut acc = ring.zero();
    for i in 0..n {
        for l in 0..n {
            let (x, y) = (&a[i * n + l], b.get(l, i));
            if !x.is_zero() && !y.is_zero() {
                acc = ring.add(&acc, &ring.mul(x, y));
            }
        }
    }
    acc
}

/// x / k, losing v_p(k) digits.
fn div_int(ring: &PadicRing, x: &CycloPadic, k: u64) -> Result<(CycloPadic, u32)> {
    let p = ring.p();
    let (mut u, mut v) = (k, 0u32);
    while u % p == 0 {
        u /= p;
        v += 1;
    }
    let inv = ring
        .inv_unit(&ring.from_int(u as i64))
        .ok_or_else(|| Error::invariant("unit part of an integer is not invertible"))?;
    let y = ring.mul(x, &inv);
    let y = ring
        .div_p_power(&y, v)
        .ok_or_else(|| Error::Precision(format!("Newton identity at k = {k} is not divisible")))?;
    Ok((y, v))
}

/// det(1 − sM) through s^d by Newton's identities on tr(M^k); d ≤ size/p.
pub fn fredholm_series(ring: &PadicRing, m: &UpMatrix, d: usize) -> Result<FredholmSeries> {
    if d * ring.p() as usize > m.size {
        return Err(Error::input(format!(
            "s-degree {d} exceeds size/p for a {0}x{0} matrix",
            m.size
        )));
    }
    let mut traces = Vec::with_capacity(d);
    let mut power: Vec<CycloPadic> = {
        let mut id = vec![ring.zero(); m.size * m.size];
        for i in 0..m.size {
            id[i * m.size + i] = ring.one();
        }
        id
    };
    for k in 1..=d {
        traces.push(trace_of_product(ring, &power, m));
        if k < d {
            power = mat_mul(ring, &power, m);
        }
    }
    // e_k = (1/k) Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i
    let mut e = vec![ring.one()];
    let mut loss = vec![0u32];
    for k in 1..=d {
        let mut acc = ring.zero();
        for i in 1..=k {
            let term = ring.mul(&e[k - i], &traces[i - 1]);
            acc = if i % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        let (ek, v) = div_int(ring, &acc, k as u64)?;
        loss.push(v + loss.iter().copied().max().unwrap_or(0));
        e.push(ek);
    }
    let digits = ring.digits().saturating_sub(loss.iter().copied().max().unwrap_or(0));
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, c)| ring.truncate_digits(&if k % 2 == 1 { ring.neg(&c) } else { c }, digits))
        .collect();
    Ok(FredholmSeries { coeffs, digits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldDesc;

    fn ring() -> PadicRing {
        let k = FieldDesc::prime_field(3).unwrap();
        PadicRing::new(&k, 1, 8, &k.from_int(2)).unwrap()
    }

    fn matrix(r: &PadicRing, size: usize, f: impl Fn(usize, usize) -> i64) -> UpMatrix {
        let entries = (0..size * size).map(|i| r.from_int(f(i / size, i % size))).collect();
        UpMatrix { size, entries }
    }

    #[test]
    fn trivial_multiplier_is_pure_up() {
        let r = ring();
        let mut alpha = vec![r.zero(); 16];
        alpha[0] = r.one();
        let m = up_matrix(&r, &alpha, 6).unwrap();
        for k in 0..6 {
            for j in 0..6 {
                let want = if j == 3 * k { r.one() } else { r.zero() };
                assert_eq!(*m.get(k, j), want);
            }
        }
        let det = fredholm_series(&r, &m, 2).unwrap();
        assert_eq!(det.coeffs, vec![r.one(), r.from_int(-1), r.zero()]);
    }

    #[test]
    fn monomial_multiplier_is_one_diagonal() {
        // α = z^{-1}: entry (k, j) = 1 iff 3k − j = 1
        let r = ring();
        let mut alpha = vec![r.zero(); 16];
        alpha[1] = r.one();
        let m = up_matrix(&r, &alpha, 6).unwrap();
        for k in 0..6 {
            for j in 0..6 {
                assert_eq!(m.get(k, j).is_zero(), 3 * k != j + 1);
            }
        }
    }

    #[test]
    fn short_multiplier_is_rejected() {
        let r = ring();
        assert!(matches!(up_matrix(&r, &[r.one()], 4), Err(Error::Precision(_))));
    }

    #[test]
    fn zero_matrix_has_unit_determinant() {
        let r = ring();
        let det = fredholm_series(&r, &matrix(&r, 6, |_, _| 0), 2).unwrap();
        assert_eq!(det.coeffs, vec![r.one(), r.zero(), r.zero()]);
    }

    #[test]
    fn diagonal_determinant() {
        let r = ring();
        let (l1, l2) = (5, 7);
        let m = matrix(&r, 6, |i, j| match (i, j) {
            (0, 0) => l1,
            (1, 1) => l2,
            _ => 0,
        });
        let det = fredholm_series(&r, &m, 2).unwrap();
        assert_eq!(det.coeffs, vec![r.one(), r.from_int(-(l1 + l2)), r.from_int(l1 * l2)]);
    }

    #[test]
    fn division_by_p_costs_a_digit() {
        let r = ring();
        let m = matrix(&r, 9, |i, j| (i * 9 + j) as i64 % 5);
        let det = fredholm_series(&r, &m, 3).unwrap();
        assert_eq!(det.digits, 7);
    }
}
