//! Local expansions at a point and reduction modulo (F − 1)W_n.

use alloc::vec::Vec;

use super::spec::{CharacterSpec, Point};
use crate::arith::{FieldDesc, FieldElement, GaloisRing, Laurent, WittSeries, WittSeriesRing};
use crate::{Error, Result};

/// Expansions of the Witt coordinates of r in the local parameter at a point.
#[derive(Clone, Debug)]
pub struct LocalWittData {
    pub point: Point,
    /// Truncated expansions, exact below the recorded precision.
    pub coords: WittSeries,
    /// ord_Q(f) for the tame part, 0 without one.
    pub tame_order: i64,
}

impl LocalWittData {
    /// Negative-exponent parts of each coordinate.
    pub fn pole_parts(&self, k: &FieldDesc) -> Vec<crate::arith::Series> {
        self.coords.coords.iter().map(|c| c.pole_part(k)).collect()
    }

    /// Largest pole order over all coordinates.
    pub fn max_pole_order(&self) -> u64 {
        self.coords
            .coords
            .iter()
            .filter_map(|c| c.valuation())
            .map(|v| (-v).max(0) as u64)
            .max()
            .unwrap_or(0)
    }
}

/// The Witt vector V^level [coeff · u^exponent].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittTerm {
    pub level: usize,
    pub exponent: i64,
    pub coeff: FieldElement,
}

/// r ≡ Σ terms + remainder mod (F − 1), every term exponent prime to p and the
/// remainder regular at the point.
#[derive(Clone, Debug)]
pub struct ReducedWittData {
    pub point: Point,
    pub terms: Vec<WittTerm>,
    pub remainder: WittSeries,
    pub tame_order: i64,
}

impl ReducedWittData {
    /// Pole order per level (0 where regular).
    pub fn pole_orders(&self, n: usize) -> Vec<u64> {
        let mut out = alloc::vec![0u64; n];
        for t in &self.terms {
            out[t.level] = out[t.level].max((-t.exponent).max(0) as u64);
        }
        out
    }

    pub fn is_wildly_ramified(&self) -> bool {
        !self.terms.is_empty()
    }

    /// Exponent w with ψ(Frob_Q) = ζ_{p^n}^w, defined when unramified.
    pub fn unramified_wild_value(&self, gr: &GaloisRing) -> Option<u64> {
        if self.is_wildly_ramified() {
            return None;
        }
        let k = gr.field();
        let coords: Vec<FieldElement> = self.remainder.coords.iter().map(|c| c.coeff(k, 0)).collect();
        Some(gr.packed_trace(&coords))
    }
}

/// Expands r and f at `q`; coordinates are exact below exponent `prec`.
pub fn local_expand(spec: &CharacterSpec, q: &Point, prec: i64) -> LocalWittData {
    let k = spec.field();
    let coords = spec.wild().iter().map(|a| a.expand_at(k, q, prec)).collect();
    let tame_order = spec
        .tame()
        .and_then(|t| t.f.ord_at(k, q))
        .unwrap_or(0);
    LocalWittData {
        point: q.clone(),
        coords: WittSeries { coords },
        tame_order,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Clear negative exponents only.
    Local,
    /// Clear every exponent of an exact Laurent polynomial.
    Global,
}

fn pick(k: &FieldDesc, s: &crate::arith::Series, mode: Mode) -> Option<(i64, FieldElement)> {
    let v = s.valuation()?;
    if v < 0 {
        return Some((v, s.coeff(k, v)));
    }
    if mode == Mode::Local {
        return None;
    }
    let d = s.degree()?;
    Some((d, s.coeff(k, d)))
}

fn decompose(ring: &WittSeriesRing, x: &WittSeries, mode: Mode) -> (Vec<WittTerm>, WittSeries) {
    let k = ring.field();
    let p = k.p() as i64;
    let mut x = x.clone();
    let mut terms = Vec::new();
    for i in 0..ring.length() {
        while let Some((e, c)) = pick(k, &x.coords[i], mode) {
            x = ring.sub(&x, &ring.shifted_teichmuller(i, Laurent::monomial(k, c.clone(), e)));
            if e != 0 && e % p == 0 {
                let root = k.frobenius_pow(&c, -1);
                x = ring.add(&x, &ring.shifted_teichmuller(i, Laurent::monomial(k, root, e / p)));
            } else {
                terms.push(WittTerm {
                    level: i,
                    exponent: e,
                    coeff: c,
                });
            }
        }
    }
    (terms, x)
}

/// Reduced representative of the local class: pole terms with exponents
/// prime to p at every level, plus a regular remainder.
///
/// Fails with `Error::Precision` if the expansions were truncated too early
/// to know the remainder's constant term.
pub fn reduce_witt(k: &FieldDesc, data: &LocalWittData) -> Result<ReducedWittData> {
    let ring = WittSeriesRing::new(k, data.coords.length())?;
    let (terms, remainder) = decompose(&ring, &data.coords, Mode::Local);
    for c in &remainder.coords {
        if c.precision().is_some_and(|p| p < 1) {
            return Err(Error::Precision(alloc::format!(
                "local expansion at {:?} too short for reduction",
                data.point
            )));
        }
    }
    Ok(ReducedWittData {
        point: data.point.clone(),
        terms,
        remainder,
        tame_order: data.tame_order,
    })
}

/// Expands and reduces at `q`, enlarging the expansion length until the
/// remainder's constant term is determined.
pub fn reduce_at(spec: &CharacterSpec, q: &Point) -> Result<ReducedWittData> {
    let k = spec.field();
    let p = spec.p() as i64;
    let d = local_expand(spec, q, 1).max_pole_order() as i64;
    let mut prec = p.pow(spec.n() as u32) * (d + 1) + 1;
    for _ in 0..6 {
        match reduce_witt(k, &local_expand(spec, q, prec)) {
            Err(Error::Precision(_)) => prec *= 2,
            other => return other,
        }
    }
    Err(Error::Precision(alloc::format!("reduction at {q:?} did not stabilise")))
}

/// Decomposition of an exact Laurent-polynomial Witt vector into terms
/// V^i[c t^e] with p ∤ e or e = 0; the sum of the terms is equivalent to `x`
/// modulo (F − 1).
pub fn decompose_global(ring: &WittSeriesRing, x: &WittSeries) -> Result<Vec<WittTerm>> {
    if x.coords.iter().any(|c| !c.is_exact()) {
        return Err(Error::input("global decomposition needs exact Laurent polynomials"));
    }
    let (terms, rest) = decompose(ring, x, Mode::Global);
    debug_assert!(rest.is_zero());
    Ok(terms)
}

/// Swan conductor max_i p^{n−1−i} s_i of a reduced representative.
pub fn swan_conductor(data: &ReducedWittData, p: u64, n: usize) -> Result<u64> {
    let mut swan = 0u64;
    for t in &data.terms {
        if t.exponent >= 0 {
            continue;
        }
        if t.exponent % p as i64 == 0 {
            return Err(Error::input("swan_conductor needs a reduced representative"));
        }
        let s = (-t.exponent) as u64 * p.pow((n - 1 - t.level) as u32);
        swan = swan.max(s);
    }
    Ok(swan)
}
