//! Convex lower polygons with exact rational vertices.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// A convex piecewise-linear function given by its vertices, x strictly increasing
/// and slopes nondecreasing. Collinear interior vertices are removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolygon {
    vertices: Vec<(Rational, Rational)>,
}

/// Outcome of comparing two polygons pointwise on their common x-range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationReport {
    pub holds: bool,
    /// Minimum of upper − lower over the compared vertices.
    pub min_margin: Rational,
    /// An x-coordinate attaining `min_margin`.
    pub witness_x: Rational,
    /// Right end of the compared range.
    pub compared_to: Rational,
}

fn slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (b.1 - a.1) / (b.0 - a.0)
}

impl RationalPolygon {
    /// The polygon with a single vertex at the origin.
    pub fn empty() -> Self {
        RationalPolygon {
            vertices: alloc::vec![(Rational::zero(), Rational::zero())],
        }
    }

    pub fn from_vertices(vertices: Vec<(Rational, Rational)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("polygon needs at least one vertex"));
        }
        for w in vertices.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::input("polygon x-coordinates must increase"));
            }
        }
        for w in vertices.windows(3) {
            if slope(&w[1], &w[2]) < slope(&w[0], &w[1]) {
                return Err(Error::input("polygon is not convex"));
            }
        }
        let mut p = RationalPolygon { vertices };
        p.drop_collinear();
        Ok(p)
    }

    fn drop_collinear(&mut self) {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(self.vertices.len());
        for v in self.vertices.drain(..) {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                if slope(a, b) == slope(b, &v) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(v);
        }
        self.vertices = out;
    }

    /// Lower convex hull of points (x, y); points with `y = None` (infinite) are ignored.
    /// The hull spans from the leftmost to the rightmost finite point.
    pub fn lower_hull(points: &[(Rational, Option<Rational>)]) -> Result<Self> {
        let mut pts: Vec<(Rational, Rational)> = points
            .iter()
            .filter_map(|(x, y)| y.map(|y| (*x, y)))
            .collect();
        if pts.is_empty() {
            return Err(Error::input("no finite points for Newton polygon"));
        }
        pts.sort();
        pts.dedup_by(|b, a| a.0 == b.0);
        let mut hull: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
        for pt in pts {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // drop b unless it lies strictly below segment a–pt
                if slope(&a, &b) >= slope(&b, &pt) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        Ok(RationalPolygon { vertices: hull })
    }

    /// Polygon from (slope, horizontal length) pairs, starting at the origin.
    pub fn from_slopes(slopes: &[(Rational, Rational)]) -> Result<Self> {
        let mut s: Vec<(Rational, Rational)> = slopes
            .iter()
            .copied()
            .filter(|(_, len)| !len.is_zero())
            .collect();
        if s.iter().any(|(_, len)| *len < Rational::zero()) {
            return Err(Error::input("negative slope multiplicity"));
        }
        s.sort();
        let mut vertices = alloc::vec![(Rational::zero(), Rational::zero())];
        for (sl, len) in s {
            let (x, y) = *vertices.last().unwrap();
            vertices.push((x + len, y + sl * len));
        }
        let mut p = RationalPolygon { vertices };
        p.drop_collinear();
        Ok(p)
    }

    /// Polygon whose slope multiset is `slopes`, each with multiplicity one.
    pub fn from_slope_multiset(slopes: &[Rational]) -> Self {
        let pairs: Vec<(Rational, Rational)> =
            slopes.iter().map(|&s| (s, Rational::one())).collect();
        Self::from_slopes(&pairs).expect("unit lengths are valid")
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    pub fn start(&self) -> (Rational, Rational) {
        self.vertices[0]
    }

    pub fn endpoint(&self) -> (Rational, Rational) {
        *self.vertices.last().unwrap()
    }

    pub fn length(&self) -> Rational {
        self.endpoint().0 - self.start().0
    }

    /// Value at x, or `None` outside the x-range.
    pub fn eval(&self, x: Rational) -> Option<Rational> {
        let first = self.vertices.first()?;
        let last = self.vertices.last()?;
        if x < first.0 || x > last.0 {
            return None;
        }
        for w in self.vertices.windows(2) {
            if x <= w[1].0 {
                return Some(w[0].1 + slope(&w[0], &w[1]) * (x - w[0].0));
            }
        }
        Some(last.1)
    }

    /// (slope, horizontal length) for each segment, slopes increasing.
    pub fn slopes(&self) -> Vec<(Rational, Rational)> {
        self.vertices
            .windows(2)
            .map(|w| (slope(&w[0], &w[1]), w[1].0 - w[0].0))
            .collect()
    }

    /// The slope multiset, if every segment has integral length.
    pub fn slope_multiset(&self) -> Option<Vec<Rational>> {
        let mut out = Vec::new();
        for (s, len) in self.slopes() {
            if !len.is_integer() {
                return None;
            }
            for _ in 0..len.to_integer() {
                out.push(s);
            }
        }
        Some(out)
    }

    /// Sub-polygon consisting of the segments with slope < `bound`.
    pub fn truncate_below(&self, bound: Rational) -> Self {
        let segs: Vec<(Rational, Rational)> =
            self.slopes().into_iter().filter(|(s, _)| *s < bound).collect();
        Self::from_slopes(&segs).expect("subset of valid segments")
    }

    /// The polygon with each slope α replaced by 1 − α, lengths kept.
    pub fn dual(&self) -> Self {
        let one = Rational::from_integer(1);
        let segs: Vec<(Rational, Rational)> = self.slopes().into_iter().map(|(s, l)| (one - s, l)).collect();
        Self::from_slopes(&segs).expect("valid segments")
    }

    /// Whether the slope multiset is invariant under s ↦ w − s.
    pub fn is_symmetric(&self, weight: Rational) -> bool {
        let mut a: Vec<(Rational, Rational)> = self.slopes();
        let mut b: Vec<(Rational, Rational)> = a.iter().map(|&(s, l)| (weight - s, l)).collect();
        a.sort();
        b.sort();
        a == b
    }

    /// Checks `self ≥ lower` at every vertex of either polygon in the common x-range.
    pub fn lies_above(&self, lower: &RationalPolygon) -> DominationReport {
        let lo = self.start().0.max(lower.start().0);
        let hi = self.endpoint().0.min(lower.endpoint().0);
        let mut xs: Vec<Rational> = self
            .vertices
            .iter()
            .chain(lower.vertices.iter())
            .map(|v| v.0)
            .filter(|x| *x >= lo && *x <= hi)
            .collect();
        xs.push(lo);
        xs.push(hi);
        xs.sort();
        xs.dedup();
        let mut min_margin: Option<(Rational, Rational)> = None;
        for x in xs {
            let (Some(u), Some(l)) = (self.eval(x), lower.eval(x)) else {
                continue;
            };
            let margin = u - l;
            if min_margin.is_none_or(|(m, _)| margin < m) {
                min_margin = Some((margin, x));
            }
        }
        let (min_margin, witness_x) = min_margin.unwrap_or((Rational::zero(), lo));
        DominationReport {
            holds: min_margin >= Rational::zero(),
            min_margin,
            witness_x,
            compared_to: hi,
        }
    }

    /// Shifts the polygon vertically.
    pub fn translate_y(&self, dy: Rational) -> Self {
        RationalPolygon {
            vertices: self.vertices.iter().map(|&(x, y)| (x, y + dy)).collect(),
        }
    }
}
