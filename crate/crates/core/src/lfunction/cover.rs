//! Z/p^n-covers of P^1: the Newton polygon bound from ramification breaks,
//! the character decomposition of the zeta numerator, and direct point
//! counts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lpoly::l_polynomial;
use crate::arith::{make_extension, GaloisRing};
use crate::character::{analyze_points, ramification_data, CharacterSpec, Point};
use crate::polygon::RationalPolygon;
use crate::{Error, Rational, Result};

/// Upper ramification breaks s(1), …, s(n) of the layers C_j → X above one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPoint {
    pub point: Option<Point>,
    pub breaks: Vec<u64>,
}

impl CoverPoint {
    /// r with ramification index p^r: the number of ramified layers.
    pub fn ramification_exponent(&self) -> u32 {
        self.breaks.iter().filter(|&&s| s > 0).count() as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverData {
    pub p: u64,
    pub n: u32,
    pub genus: u32,
    pub points: Vec<CoverPoint>,
}

impl CoverData {
    /// Ω = Σ p^{n − r_i}(p^{r_i} − 1).
    pub fn omega(&self) -> u64 {
        self.points
            .iter()
            .map(|pt| {
                let r = pt.ramification_exponent();
                self.p.pow(self.n - r) * (self.p.pow(r) - 1)
            })
            .sum()
    }
}

/// The slope multiset bounding NP_C from below.
pub fn corollary_slopes(cover: &CoverData, np_x: &[Rational]) -> Result<Vec<Rational>> {
    let (p, n) = (cover.p as i64, cover.n);
    for pt in &cover.points {
        if pt.breaks.len() != n as usize {
            return Err(Error::input(format!("expected {n} breaks per point")));
        }
    }
    let mult = (p.pow(n) - 1) * (cover.genus as i64 - 1) + cover.omega() as i64;
    if mult < 0 {
        return Err(Error::invariant(format!("negative multiplicity {mult}")));
    }
    let mut out = np_x.to_vec();
    out.extend(core::iter::repeat_n(Rational::from_integer(0), mult as usize));
    out.extend(core::iter::repeat_n(Rational::from_integer(1), mult as usize));
    for pt in &cover.points {
        for (j, &s) in pt.breaks.iter().enumerate() {
            let copies = (p.pow(j as u32) * (p - 1)) as usize;
            for k in 1..s as i64 {
                out.extend(core::iter::repeat_n(Rational::new(k, s as i64), copies));
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn corollary_polygon(cover: &CoverData, np_x: &[Rational]) -> Result<RationalPolygon> {
    Ok(RationalPolygon::from_slope_multiset(&corollary_slopes(cover, np_x)?))
}

fn truncation(spec: &CharacterSpec, j: usize) -> Result<Option<CharacterSpec>> {
    let wild = spec.wild()[..j].to_vec();
    if wild.iter().all(|a| a.is_zero()) {
        return Ok(None);
    }
    CharacterSpec::new(spec.field().clone(), j, spec.genus(), wild, None).map(Some)
}

/// Break data of the cover F(y) − y = r given by the wild part of `spec`.
pub fn cover_breaks(spec: &CharacterSpec) -> Result<CoverData> {
    if spec.tame().is_some() {
        return Err(Error::input("cover breaks need a purely wild character"));
    }
    let n = spec.n();
    let mut table: BTreeMap<Point, Vec<u64>> = BTreeMap::new();
    for j in 1..=n {
        let Some(t) = truncation(spec, j)? else { continue };
        for d in ramification_data(&t)? {
            table.entry(d.point.clone()).or_insert_with(|| vec![0; n])[j - 1] = d.swan;
        }
    }
    Ok(CoverData {
        p: spec.p(),
        n: n as u32,
        genus: spec.genus(),
        points: table
            .into_iter()
            .map(|(pt, breaks)| CoverPoint {
                point: Some(pt),
                breaks,
            })
            .collect(),
    })
}

/// Π_{j=1}^{p^n − 1} L(ρ^j, s), which must have rational integer coefficients.
pub fn character_product(spec: &CharacterSpec, budget: u128) -> Result<Vec<BigInt>> {
    let order = spec.p().pow(spec.n() as u32) as i64;
    let ring = super::sums::sum_ring(spec)?;
    let mut acc = vec![ring.one()];
    for j in 1..order {
        let l = l_polynomial(&spec.power(j)?, budget)?;
        let mut next = vec![ring.zero(); acc.len() + l.coeffs.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (k, b) in l.coeffs.iter().enumerate() {
                next[i + k] = ring.add(&next[i + k], &ring.mul(a, b));
            }
        }
        acc = next;
    }
    acc.iter()
        .map(|c| {
            ring.as_integer(c)
                .ok_or_else(|| Error::invariant("character product is not rational"))
        })
        .collect()
}

/// Frobenius exponent w ∈ Z/p^j at an F_q-rational point where the
/// truncation to j coordinates is unramified.
fn layer_frobenius(spec: &CharacterSpec, j: usize, q: &Point) -> Result<u64> {
    let Some(t) = truncation(spec, j)? else {
        return Ok(0);
    };
    if let Some(a) = analyze_points(&t)?.into_iter().find(|a| a.datum.point == *q) {
        return a
            .frobenius
            .map(|f| f.wild)
            .ok_or_else(|| Error::invariant("layer is ramified"));
    }
    let k = spec.field();
    let coords: Vec<_> = t.wild().iter().map(|c| c.expand_at(k, q, 1).coeff(k, 0)).collect();
    Ok(GaloisRing::new(k, j as u32)?.packed_trace(&coords))
}

fn layer_ramified(spec: &CharacterSpec, j: usize, q: &Point) -> Result<bool> {
    match truncation(spec, j)? {
        None => Ok(false),
        Some(t) => Ok(ramification_data(&t)?.iter().any(|d| d.point == *q)),
    }
}

/// #C(F_{q^k}) for the cover F(y) − y = r of P^1, counted fibre by fibre:
/// p^n points over x where Tr r(x) = 0, none over other unramified x, and
/// over a special point the points of the unramified quotient.
pub fn cover_point_count(spec: &CharacterSpec, k: usize) -> Result<u64> {
    if spec.tame().is_some() {
        return Err(Error::input("cover point counts need a purely wild character"));
    }
    let (big, emb) = make_extension(spec.field(), k)?;
    let n = spec.n();
    let pn = spec.p().pow(n as u32);
    let gr = GaloisRing::new(&big, n as u32)?;
    let wild: Vec<_> = spec.wild().iter().map(|a| a.map_coeffs(|c| emb.apply(c))).collect();
    let special: Vec<_> = spec
        .special_points()?
        .into_iter()
        .filter_map(|q| match q {
            Point::Finite(c) => Some(emb.apply(&c)),
            Point::Infinity => None,
        })
        .collect();
    let mut count = 0u64;
    for x in big.elements() {
        if special.contains(&x) {
            continue;
        }
        let coords: Vec<_> = wild.iter().map(|a| a.eval(&big, &x).expect("regular")).collect();
        if gr.packed_trace(&coords) == 0 {
            count += pn;
        }
    }
    let inf_special = spec.special_points()?.contains(&Point::Infinity);
    if !inf_special {
        let k0 = spec.field();
        let coords: Vec<_> = spec
            .wild()
            .iter()
            .map(|a| emb.apply(&a.expand_at(k0, &Point::Infinity, 1).coeff(k0, 0)))
            .collect();
        if gr.packed_trace(&coords) == 0 {
            count += pn;
        }
    }
    // over a special point the fibre is that of the largest unramified layer
    for q in spec.special_points()? {
        let mut u = 0;
        for j in 1..=n {
            if layer_ramified(spec, j, &q)? {
                break;
            }
            u = j;
        }
        let size = spec.p().pow(u as u32);
        let w = if u == 0 { 0 } else { layer_frobenius(spec, u, &q)? };
        if (w as u128 * k as u128) % size as u128 == 0 {
            count += size;
        }
    }
    Ok(count)
}

/// Numerator P(s) of the zeta function of C from point counts N_1..N_g,
/// completed by the functional equation; `genus` is that of C.
pub fn zeta_numerator_from_counts(q: u64, genus: usize, counts: &[u64]) -> Result<Vec<BigInt>> {
    if counts.len() < genus {
        return Err(Error::input(format!("need {genus} point counts")));
    }
    // log Z = Σ N_k s^k / k; P = Z (1 − s)(1 − qs)
    let len = genus + 1;
    let qb = BigInt::from(q);
    let mut a: Vec<BigInt> = Vec::with_capacity(len);
    for k in 1..len {
        let nk = BigInt::from(counts[k - 1]);
        a.push(nk - BigInt::one() - qb.pow(k as u32));
    }
    // P = exp(Σ a_k s^k / k)
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    for j in 1..len {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            acc += BigRational::from_integer(a[i - 1].clone()) * &c[j - i];
        }
        c.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    let mut p: Vec<BigInt> = c
        .iter()
        .map(|v| {
            v.is_integer()
                .then(|| v.to_integer())
                .ok_or_else(|| Error::invariant("zeta numerator is not integral"))
        })
        .collect::<Result<_>>()?;
    for i in (0..genus).rev() {
        let v = qb.pow((genus - i) as u32) * &p[i];
        p.push(v);
    }
    Ok(p)
}

/// q-adic Newton polygon of an integer polynomial with constant term 1.
pub fn integer_newton_polygon(coeffs: &[BigInt], p: u64, a: usize) -> Result<RationalPolygon> {
    let pb = BigInt::from(p);
    let pts: Vec<(Rational, Option<Rational>)> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = if c.is_zero() {
                None
            } else {
                let mut v = 0i64;
                let mut x = c.clone();
                while (&x % &pb).is_zero() {
                    x /= &pb;
                    v += 1;
                }
                Some(Rational::new(v, a as i64))
            };
            (Rational::from_integer(i as i64), v)
        })
        .collect();
    RationalPolygon::lower_hull(&pts)
}
