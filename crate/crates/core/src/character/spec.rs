//! Character specifications ρ = ψ_r ⊗ χ_{f,Γ} on P^1 over F_q.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{make_extension, Embedding, FieldDesc, FieldElement, Laurent, Series, WittSeries, WittSeriesRing};
use crate::{Error, Result};

/// Exponent of ω in the character sum, relative to ε_Q = Γ·ord_Q(f).
///
/// The tame character is χ(x) = ω(N f(x))^{SIGN·Γ}. Fixed by the Gauss sum
/// calibration: with this value the Newton slope of a Gauss sum equals its
/// Hodge slope for every Γ.
pub const SIGN: i64 = -1;

/// A point of P^1(F_q).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(FieldElement),
    Infinity,
}

/// Polynomials over F_q, low degree first, no trailing zeros.
pub(crate) type Poly = Vec<FieldElement>;

pub(crate) fn ptrim(a: &mut Poly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn peval(k: &FieldDesc, a: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = k.zero();
    for c in a.iter().rev() {
        acc = k.add(&k.mul(&acc, x), c);
    }
    acc
}

/// Coefficients of a(c + u) as a polynomial in u.
fn taylor_shift(k: &FieldDesc, a: &[FieldElement], c: &FieldElement) -> Poly {
    let mut out: Poly = Vec::new();
    for coeff in a.iter().rev() {
        // out = out·(u + c) + coeff
        let mut next = vec![k.zero(); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], o);
            next[i] = k.add(&next[i], &k.mul(o, c));
        }
        next[0] = k.add(&next[0], coeff);
        out = next;
    }
    ptrim(&mut out);
    out
}

/// Power series a/b to `len` terms; b(0) ≠ 0.
fn series_div(k: &FieldDesc, a: &[FieldElement], b: &[FieldElement], len: usize) -> Poly {
    let b0inv = k.inv(&b[0]).expect("unit constant term");
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = a.get(i).cloned().unwrap_or_else(|| k.zero());
        for j in 1..=i.min(b.len().saturating_sub(1)) {
            acc = k.sub(&acc, &k.mul(&b[j], &out[i - j]));
        }
        out.push(k.mul(&acc, &b0inv));
    }
    out
}

fn leading_zeros(a: &[FieldElement]) -> usize {
    a.iter().take_while(|c| c.is_zero()).count()
}

/// A rational function num/den over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(mut num: Poly, mut den: Poly) -> Result<Self> {
        ptrim(&mut num);
        ptrim(&mut den);
        if den.is_empty() {
            return Err(Error::input("zero denominator"));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero(k: &FieldDesc) -> Self {
        RationalFunction {
            num: Vec::new(),
            den: vec![k.one()],
        }
    }

    pub fn polynomial(k: &FieldDesc, num: Poly) -> Self {
        Self::new(num, vec![k.one()]).expect("nonzero denominator")
    }

    pub fn num(&self) -> &[FieldElement] {
        &self.num
    }

    pub fn den(&self) -> &[FieldElement] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    /// ord_Q; `None` for the zero function.
    pub fn ord_at(&self, k: &FieldDesc, q: &Point) -> Option<i64> {
        if self.num.is_empty() {
            return None;
        }
        Some(match q {
            Point::Infinity => self.den.len() as i64 - self.num.len() as i64,
            Point::Finite(c) => {
                leading_zeros(&taylor_shift(k, &self.num, c)) as i64
                    - leading_zeros(&taylor_shift(k, &self.den, c)) as i64
            }
        })
    }

    /// Laurent expansion in the local parameter (t − c, or 1/t at ∞),
    /// exact below exponent `prec`.
    pub fn expand_at(&self, k: &FieldDesc, q: &Point, prec: i64) -> Series {
        if self.num.is_empty() {
            return Laurent::zero(Some(prec));
        }
        let (num, den, shift) = match q {
            Point::Infinity => {
                let mut n: Poly = self.num.clone();
                n.reverse();
                let mut d: Poly = self.den.clone();
                d.reverse();
                (n, d, self.den.len() as i64 - self.num.len() as i64)
            }
            Point::Finite(c) => {
                let n = taylor_shift(k, &self.num, c);
                let d = taylor_shift(k, &self.den, c);
                let vn = leading_zeros(&n);
                let vd = leading_zeros(&d);
                (n[vn..].to_vec(), d[vd..].to_vec(), vn as i64 - vd as i64)
            }
        };
        let len = (prec - shift).max(0) as usize;
        let coeffs = series_div(k, &num, &den, len);
        Laurent::from_coeffs(k, shift, coeffs, Some(prec))
    }

    /// Leading coefficient of the local expansion at `q` (f = c·u^{ord} + …).
    pub fn leading_coefficient_at(&self, k: &FieldDesc, q: &Point) -> Option<FieldElement> {
        let ord = self.ord_at(k, q)?;
        self.expand_at(k, q, ord + 1).valuation().map(|v| {
            debug_assert_eq!(v, ord);
            self.expand_at(k, q, ord + 1).coeff(k, v)
        })
    }

    /// Value at a finite point; `None` at a pole. Removable singularities
    /// (common factors of num and den) are handled.
    pub fn eval(&self, k: &FieldDesc, x: &FieldElement) -> Option<FieldElement> {
        let d = peval(k, &self.den, x);
        if !d.is_zero() {
            return Some(k.mul(&peval(k, &self.num, x), &k.inv(&d)?));
        }
        let q = Point::Finite(x.clone());
        match self.ord_at(k, &q) {
            None => Some(k.zero()),
            Some(o) if o < 0 => None,
            Some(_) => Some(self.expand_at(k, &q, 1).coeff(k, 0)),
        }
    }

    /// Applies a coefficient map, e.g. an embedding or a Frobenius twist.
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut num: Poly = self.num.iter().map(&f).collect();
        let mut den: Poly = self.den.iter().map(&f).collect();
        ptrim(&mut num);
        ptrim(&mut den);
        RationalFunction { num, den }
    }

    /// Distinct roots of a polynomial in F_q with multiplicities, if it splits.
    fn split_roots(k: &FieldDesc, a: &[FieldElement]) -> Option<Vec<(FieldElement, usize)>> {
        let deg = a.len().saturating_sub(1);
        let mut out = Vec::new();
        let mut total = 0;
        for c in k.elements() {
            let m = leading_zeros(&taylor_shift(k, a, &c));
            if m > 0 {
                total += m;
                out.push((c, m));
            }
            if total == deg {
                break;
            }
        }
        (total == deg).then_some(out)
    }

    /// Finite poles, or an error if some pole is not F_q-rational.
    pub fn finite_poles(&self, k: &FieldDesc) -> Result<Vec<FieldElement>> {
        let roots = Self::split_roots(k, &self.den).ok_or_else(|| {
            Error::Unsupported("a pole is not F_q-rational; use base_change".into())
        })?;
        Ok(roots
            .into_iter()
            .filter(|(c, _)| self.ord_at(k, &Point::Finite(c.clone())).is_some_and(|o| o < 0))
            .map(|(c, _)| c)
            .collect())
    }

    /// Finite zeros and poles, or an error if some is not F_q-rational.
    pub fn finite_divisor_support(&self, k: &FieldDesc) -> Result<Vec<FieldElement>> {
        let err = || Error::Unsupported("a zero or pole is not F_q-rational; use base_change".into());
        let mut pts: Vec<FieldElement> = Self::split_roots(k, &self.num)
            .ok_or_else(err)?
            .into_iter()
            .chain(Self::split_roots(k, &self.den).ok_or_else(err)?)
            .map(|(c, _)| c)
            .collect();
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// Exact Laurent polynomial in t, if the denominator is a monomial.
    pub fn as_laurent(&self, k: &FieldDesc) -> Option<Series> {
        let z = leading_zeros(&self.den);
        if self.den.len() != z + 1 {
            return None;
        }
        let inv = k.inv(&self.den[z])?;
        let coeffs = self.num.iter().map(|c| k.mul(c, &inv)).collect();
        Some(Laurent::from_coeffs(k, -(z as i64), coeffs, None))
    }

    /// Inverse of `as_laurent` for exact Laurent polynomials.
    pub fn from_laurent(k: &FieldDesc, s: &Series) -> Self {
        let Some(v) = s.valuation() else {
            return Self::zero(k);
        };
        let deg = s.degree().unwrap();
        let shift = (-v).max(0);
        let num: Poly = (0..=deg + shift)
            .map(|e| s.coeff(k, e - shift))
            .collect();
        let mut den = vec![k.zero(); shift as usize + 1];
        den[shift as usize] = k.one();
        Self::new(num, den).expect("nonzero denominator")
    }
}

/// Tame part χ(x) = ω(N f(x))^{SIGN·Γ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameSpec {
    pub f: RationalFunction,
    pub gamma: u64,
}

/// ρ = ψ_r ⊗ χ on P^1 over F_q with r = (a_0, …, a_{n-1}) ∈ W_n(F_q(t)).
#[derive(Clone, Debug)]
pub struct CharacterSpec {
    field: FieldDesc,
    n: usize,
    genus: u32,
    wild: Vec<RationalFunction>,
    tame: Option<TameSpec>,
    generator: FieldElement,
}

impl CharacterSpec {
    pub fn new(
        field: FieldDesc,
        n: usize,
        genus: u32,
        wild: Vec<RationalFunction>,
        tame: Option<TameSpec>,
    ) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::Unsupported("p = 2".into()));
        }
        if n == 0 || n > 3 {
            return Err(Error::Unsupported(alloc::format!("Witt length {n} (supported: 1..=3)")));
        }
        if wild.len() != n {
            return Err(Error::input(alloc::format!(
                "expected {n} Witt coordinates, got {}",
                wild.len()
            )));
        }
        let q1 = (field.order() - 1) as u64;
        let tame = match tame {
            Some(t) if t.f.is_zero() => {
                return Err(Error::input("tame function f must be nonzero"));
            }
            Some(mut t) => {
                t.gamma %= q1;
                (t.gamma != 0 && !t.f.is_constant()).then_some(t)
            }
            None => None,
        };
        if wild.iter().all(|a| a.is_zero()) && tame.is_none() {
            return Err(Error::input("character is trivial"));
        }
        for a in &wild {
            a.finite_poles(&field)?;
        }
        if let Some(t) = &tame {
            t.f.finite_divisor_support(&field)?;
        }
        let generator = field.multiplicative_generator();
        Ok(CharacterSpec {
            field,
            n,
            genus,
            wild,
            tame,
            generator,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p() as u64
    }

    /// a with q = p^a.
    pub fn a(&self) -> usize {
        self.field.degree()
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn wild(&self) -> &[RationalFunction] {
        &self.wild
    }

    pub fn tame(&self) -> Option<&TameSpec> {
        self.tame.as_ref()
    }

    /// Generator g of F_q^× fixing ω(g) = ζ_{q-1}.
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    /// Γ, or 0 without tame part.
    pub fn gamma(&self) -> u64 {
        self.tame.as_ref().map_or(0, |t| t.gamma)
    }

    /// Exponent of ω in the character sum: SIGN·Γ mod (q−1).
    pub fn character_exponent(&self) -> u64 {
        (SIGN * self.gamma() as i64).rem_euclid(self.q() as i64 - 1) as u64
    }

    /// Points where r has a pole or f a zero or pole.
    pub fn special_points(&self) -> Result<Vec<Point>> {
        let k = &self.field;
        let mut pts: Vec<Point> = Vec::new();
        let mut at_inf = false;
        for a in &self.wild {
            for c in a.finite_poles(k)? {
                pts.push(Point::Finite(c));
            }
            at_inf |= a.ord_at(k, &Point::Infinity).is_some_and(|o| o < 0);
        }
        if let Some(t) = &self.tame {
            for c in t.f.finite_divisor_support(k)? {
                pts.push(Point::Finite(c));
            }
            at_inf |= t.f.ord_at(k, &Point::Infinity) != Some(0);
        }
        if at_inf {
            pts.push(Point::Infinity);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// Discrete log against the fixed generator.
    pub fn dlog_table(&self) -> Vec<u64> {
        let k = &self.field;
        let mut table = vec![0u64; self.q() as usize];
        let mut x = k.one();
        for i in 0..self.q() - 1 {
            table[k.index(&x) as usize] = i;
            x = k.mul(&x, &self.generator);
        }
        table
    }

    fn with_parts(&self, wild: Vec<RationalFunction>, tame: Option<TameSpec>) -> Result<Self> {
        let mut s = CharacterSpec::new(self.field.clone(), self.n, self.genus, wild, tame)?;
        s.generator = self.generator.clone();
        Ok(s)
    }

    /// ρ^{-1}: r ↦ −r (coordinatewise for odd p), Γ ↦ −Γ.
    pub fn inverse(&self) -> Result<Self> {
        let k = &self.field;
        let wild = self.wild.iter().map(|a| a.map_coeffs(|c| k.neg(c))).collect();
        let q1 = self.q() - 1;
        let tame = self.tame.as_ref().map(|t| TameSpec {
            f: t.f.clone(),
            gamma: (q1 - t.gamma % q1) % q1,
        });
        self.with_parts(wild, tame)
    }

    /// Galois conjugate: coefficients twisted by Frobenius, Γ ↦ pΓ.
    pub fn galois_conjugate(&self) -> Result<Self> {
        let k = &self.field;
        let wild = self.wild.iter().map(|a| a.map_coeffs(|c| k.frobenius(c))).collect();
        let q1 = self.q() - 1;
        let tame = self.tame.as_ref().map(|t| TameSpec {
            f: t.f.map_coeffs(|c| k.frobenius(c)),
            gamma: t.gamma * self.p() % q1,
        });
        self.with_parts(wild, tame)
    }

    /// ρ^j for Laurent-polynomial r, using Witt scalar multiplication.
    pub fn power(&self, j: i64) -> Result<Self> {
        let k = &self.field;
        let ring = WittSeriesRing::new(k, self.n)?;
        let coords = self
            .wild
            .iter()
            .map(|a| {
                a.as_laurent(k)
                    .ok_or_else(|| Error::Unsupported("powers need Laurent-polynomial Witt coordinates".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let r = ring.scalar_mul(&WittSeries { coords }, j);
        let wild = r.coords.iter().map(|s| RationalFunction::from_laurent(k, s)).collect();
        let q1 = self.q() as i64 - 1;
        let tame = self.tame.as_ref().map(|t| TameSpec {
            f: t.f.clone(),
            gamma: (t.gamma as i64 * j).rem_euclid(q1) as u64,
        });
        self.with_parts(wild, tame)
    }

    /// The same character viewed over F_{q^k}: coefficients embedded,
    /// Γ ↦ Γ(q^k − 1)/(q − 1) so that ω_{q^k}(y)^{Γ'} = ω_q(N y)^Γ.
    pub fn base_change(&self, k: usize) -> Result<(Self, Embedding)> {
        let (big, emb) = make_extension(&self.field, k)?;
        let wild = self.wild.iter().map(|a| a.map_coeffs(|c| emb.apply(c))).collect();
        let q = self.q() as u128;
        let factor = (big.order() - 1) / (q - 1);
        let tame = self.tame.as_ref().map(|t| TameSpec {
            f: t.f.map_coeffs(|c| emb.apply(c)),
            gamma: ((t.gamma as u128 * factor) % (big.order() - 1)) as u64,
        });
        let spec = CharacterSpec::new(big, self.n, self.genus, wild, tame)?;
        Ok((spec, emb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: &FieldDesc, c: &[i64]) -> Poly {
        c.iter().map(|&v| k.from_int(v)).collect()
    }

    #[test]
    fn orders_and_expansions() {
        let k = FieldDesc::prime_field(5).unwrap();
        // t (t-1)^2
        let g = RationalFunction::new(f(&k, &[0, 1, 3, 1]), f(&k, &[1])).unwrap();
        assert_eq!(g.ord_at(&k, &Point::Finite(k.one())), Some(2));
        assert_eq!(g.ord_at(&k, &Point::Finite(k.zero())), Some(1));
        assert_eq!(g.ord_at(&k, &Point::Infinity), Some(-3));
        // 1/t at 0 is u^{-1}
        let h = RationalFunction::new(f(&k, &[1]), f(&k, &[0, 1])).unwrap();
        let s = h.expand_at(&k, &Point::Finite(k.zero()), 3);
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.degree(), Some(-1));
        // t at ∞ is u^{-1}
        let t = RationalFunction::new(f(&k, &[0, 1]), f(&k, &[1])).unwrap();
        let s = t.expand_at(&k, &Point::Infinity, 4);
        assert_eq!(s.pole_part(&k), Laurent::monomial(&k, k.one(), -1));
    }

    #[test]
    fn expansion_of_quotient() {
        // 1/(1 - t) at 0 = Σ t^i
        let k = FieldDesc::prime_field(3).unwrap();
        let g = RationalFunction::new(f(&k, &[1]), f(&k, &[1, -1])).unwrap();
        let s = g.expand_at(&k, &Point::Finite(k.zero()), 5);
        for e in 0..5 {
            assert_eq!(s.coeff(&k, e), k.one());
        }
    }

    #[test]
    fn irrational_poles_rejected() {
        let k = FieldDesc::prime_field(3).unwrap();
        // 1/(t^2 + 1) has poles at ±i ∉ F_3
        let g = RationalFunction::new(f(&k, &[1]), f(&k, &[1, 0, 1])).unwrap();
        assert!(CharacterSpec::new(k.clone(), 1, 0, vec![g], None).is_err());
    }

    #[test]
    fn laurent_round_trip() {
        let k = FieldDesc::prime_field(3).unwrap();
        let s = Laurent::from_coeffs(&k, -2, f(&k, &[1, 0, 2, 1]), None);
        let r = RationalFunction::from_laurent(&k, &s);
        assert_eq!(r.as_laurent(&k).unwrap(), s);
    }
}
