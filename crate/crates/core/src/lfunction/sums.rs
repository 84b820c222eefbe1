//! Character sums over P^1(F_{q^k}) by enumeration of Frobenius orbits.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{make_extension, Embedding, FieldDesc, FieldElement, GaloisRing, LinearMap};
use crate::character::{analyze_points, CharacterSpec, Point, RationalFunction};
use crate::cyclotomic::{CycloInt, CycloRing};
use crate::{Error, Result};

/// Default limit on the size of an enumerated field.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Counts of closed points by character value ζ_{p^n}^w ζ_{q−1}^j, stored
/// row-major as w·(q−1) + j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueHistogram {
    pub pn: u64,
    pub q1: u64,
    pub counts: Vec<u64>,
}

impl ValueHistogram {
    pub fn new(pn: u64, q1: u64) -> Self {
        ValueHistogram {
            pn,
            q1,
            counts: vec![0; (pn * q1) as usize],
        }
    }

    pub fn record(&mut self, w: u64, j: u64) {
        self.counts[(w * self.q1 + j) as usize] += 1;
    }

    pub fn merge(&mut self, other: &ValueHistogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Everything needed to evaluate ρ on F_{q^k}.
struct Evaluator {
    big: FieldDesc,
    emb: Embedding,
    gr: GaloisRing,
    wild: Vec<RationalFunction>,
    tame: Option<RationalFunction>,
    /// (q^k − 1)/(q − 1).
    norm_exponent: u128,
    dlog: Vec<u64>,
    char_exp: u64,
    q1: u64,
    removed: Vec<FieldElement>,
}

impl Evaluator {
    fn new(spec: &CharacterSpec, k: usize) -> Result<Self> {
        let (big, emb) = make_extension(spec.field(), k)?;
        let gr = GaloisRing::new(&big, spec.n() as u32)?;
        let map = |r: &RationalFunction| r.map_coeffs(|c| emb.apply(c));
        let wild = spec.wild().iter().map(map).collect();
        let tame = spec.tame().map(|t| map(&t.f));
        let removed = spec
            .special_points()?
            .into_iter()
            .filter_map(|q| match q {
                Point::Finite(c) => Some(emb.apply(&c)),
                Point::Infinity => None,
            })
            .collect();
        let q = spec.q() as u128;
        Ok(Evaluator {
            norm_exponent: (big.order() - 1) / (q - 1),
            big,
            emb,
            gr,
            wild,
            tame,
            dlog: spec.dlog_table(),
            char_exp: spec.character_exponent(),
            q1: spec.q() - 1,
            removed,
        })
    }

    /// (w, j) with ρ(Frob_x) = ζ_{p^n}^w ζ_{q−1}^j for the closed point of x.
    fn value(&self, x: &FieldElement) -> (u64, u64) {
        let k = &self.big;
        let coords: Vec<FieldElement> = self
            .wild
            .iter()
            .map(|a| a.eval(k, x).expect("poles are removed"))
            .collect();
        let w = self.gr.packed_trace(&coords);
        let j = match &self.tame {
            Some(f) => {
                let y = f.eval(k, x).expect("poles are removed");
                let n = self.emb.restrict_unchecked(&k.pow(&y, self.norm_exponent));
                let l = self.dlog[self.emb.base().index(&n) as usize];
                ((l as u128 * self.char_exp as u128) % self.q1 as u128) as u64
            }
            None => 0,
        };
        (w, j)
    }
}

/// (w, j) at ∞ when ∞ is not a special point.
fn value_at_infinity(spec: &CharacterSpec) -> Result<(u64, u64)> {
    let k = spec.field();
    let gr = GaloisRing::new(k, spec.n() as u32)?;
    let coords: Vec<FieldElement> = spec
        .wild()
        .iter()
        .map(|a| a.expand_at(k, &Point::Infinity, 1).coeff(k, 0))
        .collect();
    let w = gr.packed_trace(&coords);
    let j = match spec.tame() {
        Some(t) => {
            let c = t
                .f
                .leading_coefficient_at(k, &Point::Infinity)
                .ok_or_else(|| Error::invariant("tame function vanishes"))?;
            let l = spec.dlog_table()[k.index(&c) as usize];
            ((l as u128 * spec.character_exponent() as u128) % (spec.q() as u128 - 1)) as u64
        }
        None => 0,
    };
    Ok((w, j))
}

/// Index-minimal representatives of the Frobenius orbits of size exactly k
/// in F_{q^k}.
fn orbit_representatives(big: &FieldDesc, qfrob: &LinearMap, k: usize) -> Vec<u128> {
    let size = big.order();
    let mut seen = vec![0u64; (size as usize).div_ceil(64)];
    let mut reps = Vec::new();
    for idx in 0..size {
        let (word, bit) = ((idx / 64) as usize, idx % 64);
        if seen[word] >> bit & 1 == 1 {
            continue;
        }
        let x = big.from_index(idx);
        let mut cur = qfrob.apply(&x);
        let mut len = 1;
        while cur != x {
            let i = big.index(&cur);
            seen[(i / 64) as usize] |= 1 << (i % 64);
            cur = qfrob.apply(&cur);
            len += 1;
        }
        if len == k {
            reps.push(idx);
        }
    }
    reps
}

fn check_budget(spec: &CharacterSpec, k: usize, budget: u128) -> Result<()> {
    let needed = (spec.q() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Histogram of ρ(Frob_x) over closed points x ∈ V of degree exactly k.
pub fn degree_histogram(spec: &CharacterSpec, k: usize, budget: u128) -> Result<ValueHistogram> {
    check_budget(spec, k, budget)?;
    let pn = spec.p().pow(spec.n() as u32);
    let mut hist = ValueHistogram::new(pn, spec.q() - 1);
    let ev = Evaluator::new(spec, k)?;
    let qfrob = ev.big.frobenius_map().pow(spec.a() as u64);
    let reps: Vec<FieldElement> = orbit_representatives(&ev.big, &qfrob, k)
        .into_iter()
        .map(|i| ev.big.from_index(i))
        .filter(|x| k > 1 || !ev.removed.contains(x))
        .collect();
    evaluate_into(&ev, &reps, &mut hist);
    if k == 1 && !spec.special_points()?.contains(&Point::Infinity) {
        let (w, j) = value_at_infinity(spec)?;
        hist.record(w, j);
    }
    Ok(hist)
}

#[cfg(not(feature = "parallel"))]
fn evaluate_into(ev: &Evaluator, reps: &[FieldElement], hist: &mut ValueHistogram) {
    for x in reps {
        let (w, j) = ev.value(x);
        hist.record(w, j);
    }
}

#[cfg(feature = "parallel")]
fn evaluate_into(ev: &Evaluator, reps: &[FieldElement], hist: &mut ValueHistogram) {
    use rayon::prelude::*;
    let (pn, q1) = (hist.pn, hist.q1);
    let partial = reps
        .par_chunks(4096)
        .map(|chunk| {
            let mut h = ValueHistogram::new(pn, q1);
            for x in chunk {
                let (w, j) = ev.value(x);
                h.record(w, j);
            }
            h
        })
        .reduce(
            || ValueHistogram::new(pn, q1),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    hist.merge(&partial);
}

/// Histograms for degrees 1..=kmax.
pub fn degree_histograms(spec: &CharacterSpec, kmax: usize, budget: u128) -> Result<Vec<ValueHistogram>> {
    (1..=kmax).map(|k| degree_histogram(spec, k, budget)).collect()
}

/// S_k = Σ_{d | k} d Σ_{deg x = d} ρ(Frob_x)^{k/d} from degree histograms
/// (`hists[d − 1]` for every d dividing k).
pub fn sum_from_histograms(ring: &CycloRing, hists: &[ValueHistogram], k: usize) -> CycloInt {
    let (pn, q1) = (hists[0].pn, hists[0].q1);
    let mut table = vec![vec![0i64; q1 as usize]; pn as usize];
    for d in (1..=k).filter(|d| k % d == 0) {
        let e = (k / d) as u64;
        for (idx, &c) in hists[d - 1].counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (w, j) = (idx as u64 / q1, idx as u64 % q1);
            table[(w * e % pn) as usize][(j * e % q1) as usize] += (d as u64 * c) as i64;
        }
    }
    ring.from_histogram(&table)
}

/// The cyclotomic ring Z[ζ_{p^n}, ζ_{q−1}] where the sums of `spec` live.
pub fn sum_ring(spec: &CharacterSpec) -> Result<CycloRing> {
    CycloRing::new(spec.p(), spec.n() as u32, spec.q() - 1)
}

/// S_k over P^1(F_{q^k}) minus the special points.
pub fn character_sum(spec: &CharacterSpec, k: usize, budget: u128) -> Result<CycloInt> {
    let ring = sum_ring(spec)?;
    let mut hists = Vec::with_capacity(k);
    for d in 1..=k {
        hists.push(if k % d == 0 {
            degree_histogram(spec, d, budget)?
        } else {
            ValueHistogram::new(spec.p().pow(spec.n() as u32), spec.q() - 1)
        });
    }
    Ok(sum_from_histograms(&ring, &hists, k))
}

/// S_1..=S_kmax.
pub fn character_sums(spec: &CharacterSpec, kmax: usize, budget: u128) -> Result<Vec<CycloInt>> {
    let ring = sum_ring(spec)?;
    let hists = degree_histograms(spec, kmax, budget)?;
    Ok((1..=kmax).map(|k| sum_from_histograms(&ring, &hists, k)).collect())
}

/// Removed points at which ρ is unramified, with their Frobenius values.
pub fn unramified_removed_points(spec: &CharacterSpec) -> Result<Vec<(Point, crate::character::FrobeniusValue)>> {
    Ok(analyze_points(spec)?
        .into_iter()
        .filter_map(|a| a.frobenius.map(|f| (a.datum.point, f)))
        .collect())
}

/// ρ(Frob_Q) at an F_q-rational point, or `None` where ρ is ramified.
pub fn frobenius_value_at(spec: &CharacterSpec, q: &Point) -> Result<Option<crate::character::FrobeniusValue>> {
    if let Some(a) = analyze_points(spec)?.into_iter().find(|a| a.datum.point == *q) {
        return Ok(a.frobenius);
    }
    let (wild, tame) = match q {
        Point::Infinity => value_at_infinity(spec)?,
        Point::Finite(x) => Evaluator::new(spec, 1)?.value(x),
    };
    Ok(Some(crate::character::FrobeniusValue { wild, tame }))
}
