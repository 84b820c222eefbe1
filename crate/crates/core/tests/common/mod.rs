//! Test-side oracles computed by direct enumeration, sharing nothing with
//! the histogram and exp-of-sums routes beyond field and ring arithmetic.
#![allow(dead_code)]

use std::collections::HashSet;

use hodgebound_core::arith::{make_extension, witt_pack, witt_trace, FieldDesc, FieldElement, GaloisRing};
use hodgebound_core::character::{CharacterSpec, Point, RationalFunction, TameSpec, SIGN};
use hodgebound_core::cyclotomic::{CycloInt, CycloRing};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn ring_of(spec: &CharacterSpec) -> CycloRing {
    CycloRing::new(spec.p(), spec.n() as u32, spec.q() - 1).unwrap()
}

fn eval_poly(k: &FieldDesc, a: &[FieldElement], x: &FieldElement) -> FieldElement {
    a.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// a / (t − x) for a root x of a, by synthetic division.
fn deflate(k: &FieldDesc, a: &[FieldElement], x: &FieldElement) -> Vec<FieldElement> {
    let mut out = vec![k.zero(); a.len() - 1];
    let mut carry = k.zero();
    for i in (1..a.len()).rev() {
        carry = k.add(&a[i], &k.mul(&carry, x));
        out[i - 1] = carry.clone();
    }
    out
}

/// Value of num/den at x after cancelling common factors t − x; None at a
/// pole.
fn eval(k: &FieldDesc, num: &[FieldElement], den: &[FieldElement], x: &FieldElement) -> Option<FieldElement> {
    let (mut num, mut den) = (num.to_vec(), den.to_vec());
    while !num.is_empty() && eval_poly(k, &num, x).is_zero() && eval_poly(k, &den, x).is_zero() {
        num = deflate(k, &num, x);
        den = deflate(k, &den, x);
    }
    if num.is_empty() {
        return Some(k.zero());
    }
    k.div(&eval_poly(k, &num, x), &eval_poly(k, &den, x))
}

/// Value at ∞ of a function regular there.
fn eval_inf(k: &FieldDesc, num: &[FieldElement], den: &[FieldElement]) -> FieldElement {
    if num.len() < den.len() {
        k.zero()
    } else {
        assert_eq!(num.len(), den.len(), "pole at infinity");
        k.div(num.last().unwrap(), den.last().unwrap()).unwrap()
    }
}

/// Exponents (w, j) with ρ = ζ_{p^n}^w ζ_{q−1}^j at one place, given the
/// Witt coordinates and tame value there over F_{q^k}.
struct Oracle {
    big: FieldDesc,
    gr: GaloisRing,
    num: Vec<Vec<FieldElement>>,
    den: Vec<Vec<FieldElement>>,
    tame: Option<(Vec<FieldElement>, Vec<FieldElement>)>,
    removed: Vec<FieldElement>,
    inf_removed: bool,
    /// ω^{-1}: F_q^× → Z/(q − 1) for the spec's generator.
    dlog: std::collections::HashMap<Vec<u32>, u64>,
    base: FieldDesc,
    emb: hodgebound_core::arith::Embedding,
    q: u64,
    exponent: i64,
}

impl Oracle {
    fn new(spec: &CharacterSpec, k: usize) -> Self {
        let (big, emb) = make_extension(spec.field(), k).unwrap();
        let gr = GaloisRing::new(&big, spec.n() as u32).unwrap();
        let lift = |v: &[FieldElement]| v.iter().map(|c| emb.apply(c)).collect::<Vec<_>>();
        let base = spec.field().clone();
        let mut dlog = std::collections::HashMap::new();
        let mut x = base.one();
        for i in 0..spec.q() - 1 {
            dlog.insert(x.coeffs().to_vec(), i);
            x = base.mul(&x, spec.generator());
        }
        let special = spec.special_points().unwrap();
        Oracle {
            num: spec.wild().iter().map(|a| lift(a.num())).collect(),
            den: spec.wild().iter().map(|a| lift(a.den())).collect(),
            tame: spec.tame().map(|t| (lift(t.f.num()), lift(t.f.den()))),
            removed: special
                .iter()
                .filter_map(|q| match q {
                    Point::Finite(c) => Some(emb.apply(c)),
                    Point::Infinity => None,
                })
                .collect(),
            inf_removed: special.contains(&Point::Infinity),
            dlog,
            base,
            emb,
            q: spec.q(),
            exponent: SIGN * spec.gamma() as i64,
            big,
            gr,
        }
    }

    fn exps(&self, coords: Vec<FieldElement>, tame: Option<FieldElement>) -> (i64, i64) {
        let w = witt_trace(&self.gr, &witt_pack(&self.gr, &coords)) as i64;
        let j = match tame {
            Some(y) => {
                let e = (self.big.order() - 1) / (self.q as u128 - 1);
                let n = self.emb.restrict(&self.big.pow(&y, e)).expect("norm lies in F_q");
                self.dlog[&n.coeffs().to_vec()] as i64 * self.exponent
            }
            None => 0,
        };
        (w, j)
    }

    fn at(&self, x: &FieldElement) -> (i64, i64) {
        let k = &self.big;
        let coords = self
            .num
            .iter()
            .zip(&self.den)
            .map(|(n, d)| eval(k, n, d, x).unwrap())
            .collect();
        let tame = self.tame.as_ref().map(|(n, d)| eval(k, n, d, x).unwrap());
        self.exps(coords, tame)
    }

    fn at_infinity(&self) -> (i64, i64) {
        let k = &self.big;
        let coords = self.num.iter().zip(&self.den).map(|(n, d)| eval_inf(k, n, d)).collect();
        let tame = self.tame.as_ref().map(|(n, d)| eval_inf(k, n, d));
        self.exps(coords, tame)
    }
}

/// S_k = Σ ρ(x) over x ∈ V(F_{q^k}) by enumeration of points.
pub fn brute_sum(spec: &CharacterSpec, k: usize) -> CycloInt {
    let ring = ring_of(spec);
    let o = Oracle::new(spec, k);
    let mut s = ring.zero();
    for x in o.big.elements() {
        if o.removed.contains(&x) {
            continue;
        }
        let (w, j) = o.at(&x);
        s = ring.add(&s, &ring.root_of_unity(w, j));
    }
    if !o.inf_removed {
        let (w, j) = o.at_infinity();
        s = ring.add(&s, &ring.root_of_unity(w, j));
    }
    s
}

fn series_mul(ring: &CycloRing, a: &[CycloInt], b: &[CycloInt], len: usize) -> Vec<CycloInt> {
    let mut out = vec![ring.zero(); len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
    }
    out
}

/// L(ρ, V, s) through s^{len−1} as Π 1/(1 − ρ(Frob_x) s^{deg x}) over closed
/// points, each found as a q-Frobenius orbit.
pub fn euler_product(spec: &CharacterSpec, len: usize) -> Vec<CycloInt> {
    let ring = ring_of(spec);
    let mut acc = vec![ring.zero(); len];
    acc[0] = ring.one();
    let q = spec.q() as u128;
    let factor = |lambda: CycloInt, d: usize| -> Vec<CycloInt> {
        let mut f = vec![ring.zero(); len];
        let mut pw = ring.one();
        let mut i = 0;
        while i < len {
            f[i] = pw.clone();
            pw = ring.mul(&pw, &lambda);
            i += d;
        }
        f
    };
    for d in 1..len {
        let o = Oracle::new(spec, d);
        let mut seen: HashSet<u128> = HashSet::new();
        for x in o.big.elements() {
            let idx = o.big.index(&x);
            if seen.contains(&idx) || o.removed.contains(&x) {
                continue;
            }
            let mut orbit = vec![idx];
            let mut y = o.big.pow(&x, q);
            while y != x {
                orbit.push(o.big.index(&y));
                y = o.big.pow(&y, q);
            }
            seen.extend(orbit.iter().copied());
            if orbit.len() != d {
                continue;
            }
            let (w, j) = o.at(&x);
            acc = series_mul(&ring, &acc, &factor(ring.root_of_unity(w, j), d), len);
        }
        if d == 1 && !o.inf_removed {
            let (w, j) = o.at_infinity();
            acc = series_mul(&ring, &acc, &factor(ring.root_of_unity(w, j), 1), len);
        }
    }
    acc
}

/// Small random characters over F_q, q ≤ 9, with poles of order ≤ 4.
pub struct SpecGen {
    rng: ChaCha8Rng,
}

impl SpecGen {
    pub fn new(seed: u64) -> Self {
        SpecGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    fn elem(&mut self, k: &FieldDesc) -> FieldElement {
        k.from_index(self.below(k.order() as u64) as u128)
    }

    fn poly(&mut self, k: &FieldDesc, deg: usize) -> Vec<FieldElement> {
        let mut v: Vec<FieldElement> = (0..=deg).map(|_| self.elem(k)).collect();
        while v[deg].is_zero() {
            v[deg] = self.elem(k);
        }
        v
    }

    pub fn field(&mut self) -> FieldDesc {
        match self.below(4) {
            0 => FieldDesc::prime_field(3).unwrap(),
            1 => FieldDesc::prime_field(5).unwrap(),
            2 => FieldDesc::prime_field(7).unwrap(),
            _ => FieldDesc::random(3, 2, self.rng.next_u64()).unwrap(),
        }
    }

    /// A wild coordinate with a pole of order ≤ `max` at ∞ and maybe one at
    /// a random finite point.
    pub fn wild(&mut self, k: &FieldDesc, max: u64) -> RationalFunction {
        let d_inf = 1 + self.below(max) as usize;
        if self.below(3) == 0 {
            let c = self.elem(k);
            let e = 1 + self.below(2) as usize;
            let mut den = vec![k.one()];
            for _ in 0..e {
                let mut next = vec![k.zero(); den.len() + 1];
                for (i, x) in den.iter().enumerate() {
                    next[i + 1] = k.add(&next[i + 1], x);
                    next[i] = k.sub(&next[i], &k.mul(x, &c));
                }
                den = next;
            }
            let num = self.poly(k, d_inf + e);
            RationalFunction::new(num, den).unwrap()
        } else {
            RationalFunction::new(self.poly(k, d_inf), vec![k.one()]).unwrap()
        }
    }

    pub fn tame(&mut self, k: &FieldDesc) -> TameSpec {
        let roots = 1 + self.below(2) as usize;
        let mut f = vec![k.one()];
        for _ in 0..roots {
            let c = self.elem(k);
            let mut next = vec![k.zero(); f.len() + 1];
            for (i, x) in f.iter().enumerate() {
                next[i + 1] = k.add(&next[i + 1], x);
                next[i] = k.sub(&next[i], &k.mul(x, &c));
            }
            f = next;
        }
        TameSpec {
            f: RationalFunction::new(f, vec![k.one()]).unwrap(),
            gamma: 1 + self.below(k.order() as u64 - 2),
        }
    }

    /// n = 1 with an optional tame part, or n = 2 over F_3.
    pub fn spec(&mut self) -> CharacterSpec {
        loop {
            let k = self.field();
            let two = k.order() == 3 && self.below(3) == 0;
            let spec = if two {
                let a0 = self.wild(&k, 2);
                let a1 = if self.below(2) == 0 {
                    RationalFunction::zero(&k)
                } else {
                    self.wild(&k, 1)
                };
                CharacterSpec::new(k, 2, 0, vec![a0, a1], None)
            } else {
                let max = if k.order() > 5 { 2 } else { 3 };
                let a0 = self.wild(&k, max);
                let tame = (self.below(2) == 0).then(|| self.tame(&k));
                CharacterSpec::new(k, 1, 0, vec![a0], tame)
            };
            if let Ok(s) = spec {
                return s;
            }
        }
    }
}
