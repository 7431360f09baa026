//! Right-continuous piecewise-affine functions with jumps.
//!
//! A [`PiecewiseLinear`] is described by a strictly increasing list of
//! breakpoints. At each breakpoint we store the left limit and the
//! (right-continuous) value; between consecutive breakpoints the function is
//! affine, and outside the breakpoint range it is constant. The left tail is
//! therefore the left limit at the first breakpoint and the right tail is the
//! value at the last one.
//!
//! This class is closed under translation, pointwise affine combination and
//! truncation, which is everything the distribution and acceptance-family
//! machinery needs. Comparisons between two functions are decided exactly on
//! the merged breakpoint set: two affine pieces are ordered on an interval iff
//! they are ordered at both ends.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub x: f64,
    /// Limit from the left at `x`.
    pub left: f64,
    /// Value at `x`; the function is right-continuous.
    pub value: f64,
}

impl Breakpoint {
    pub fn new(x: f64, left: f64, value: f64) -> Self {
        Breakpoint { x, left, value }
    }

    /// A breakpoint without a jump.
    pub fn continuous(x: f64, value: f64) -> Self {
        Breakpoint { x, left: value, value }
    }

    pub fn jump(&self) -> f64 {
        self.value - self.left
    }
}

/// An affine piece `[x0, x1)` running from `v0` at `x0` to the left limit `l1`
/// at `x1`. `x1` is `+∞` on the right tail (then `l1 == v0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x0: f64,
    pub v0: f64,
    pub x1: f64,
    pub l1: f64,
}

impl Segment {
    pub fn is_flat(&self) -> bool {
        self.v0 == self.l1
    }

    pub fn slope(&self) -> f64 {
        if self.is_flat() {
            0.0
        } else {
            (self.l1 - self.v0) / (self.x1 - self.x0)
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        interpolate(self.x0, self.v0, self.x1, self.l1, x)
    }

    /// The point of the segment where the affine piece takes the level `c`.
    /// Only meaningful for non-flat segments with `c` between the end values.
    pub fn level_point(&self, c: f64) -> f64 {
        affine_inverse(self.x0, self.v0, self.x1, self.l1, c)
    }
}

/// Evaluates the affine piece through `(x0, v0)` and `(x1, l1)` at `x`.
///
/// Endpoints and flat pieces are returned without arithmetic so that stored
/// values survive evaluation bit for bit.
pub(crate) fn interpolate(x0: f64, v0: f64, x1: f64, l1: f64, x: f64) -> f64 {
    if v0 == l1 || x == x0 {
        v0
    } else if x == x1 {
        l1
    } else {
        v0 + (l1 - v0) * ((x - x0) / (x1 - x0))
    }
}

/// Solves `interpolate(x0, v0, x1, l1, x) == c` for `x`.
pub(crate) fn affine_inverse(x0: f64, v0: f64, x1: f64, l1: f64, c: f64) -> f64 {
    x0 + (x1 - x0) * ((c - v0) / (l1 - v0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    left_tail: f64,
    points: Vec<Breakpoint>,
}

impl PiecewiseLinear {
    pub fn constant(c: f64) -> Self {
        PiecewiseLinear {
            left_tail: c,
            points: Vec::new(),
        }
    }

    /// Builds a function from breakpoints. The left tail is the left limit of
    /// the first breakpoint.
    pub fn new(points: Vec<Breakpoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::func("at least one breakpoint is required"));
        };
        let left_tail = first.left;
        for p in &points {
            if !(p.x.is_finite() && p.left.is_finite() && p.value.is_finite()) {
                return Err(Error::func(format!("non-finite breakpoint {p:?}")));
            }
        }
        for w in points.windows(2) {
            if w[0].x >= w[1].x {
                return Err(Error::func(format!(
                    "breakpoints not strictly increasing at x = {}",
                    w[1].x
                )));
            }
        }
        Ok(PiecewiseLinear { left_tail, points })
    }

    /// Builds a function and checks that the stated tails match the
    /// breakpoints.
    pub fn with_tails(points: Vec<Breakpoint>, tails: (f64, f64)) -> Result<Self> {
        if points.is_empty() {
            if tails.0 != tails.1 {
                return Err(Error::func("tails differ but there are no breakpoints"));
            }
            return Ok(PiecewiseLinear::constant(tails.0));
        }
        let f = PiecewiseLinear::new(points)?;
        if f.tail_left() != tails.0 || f.tail_right() != tails.1 {
            return Err(Error::func(format!(
                "tails ({}, {}) do not match the breakpoints ({}, {})",
                tails.0,
                tails.1,
                f.tail_left(),
                f.tail_right()
            )));
        }
        Ok(f)
    }

    pub fn points(&self) -> &[Breakpoint] {
        &self.points
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.x)
    }

    pub fn tail_left(&self) -> f64 {
        self.left_tail
    }

    pub fn tail_right(&self) -> f64 {
        self.points.last().map_or(self.left_tail, |p| p.value)
    }

    pub fn first_x(&self) -> Option<f64> {
        self.points.first().map(|p| p.x)
    }

    pub fn last_x(&self) -> Option<f64> {
        self.points.last().map(|p| p.x)
    }

    /// Right-continuous value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.points.partition_point(|p| p.x <= x);
        if idx == 0 {
            return self.left_tail;
        }
        let i = idx - 1;
        let p = self.points[i];
        match self.points.get(i + 1) {
            None => p.value,
            Some(q) => interpolate(p.x, p.value, q.x, q.left, x),
        }
    }

    /// Limit from the left at `x`.
    pub fn eval_left(&self, x: f64) -> f64 {
        let idx = self.points.partition_point(|p| p.x < x);
        match self.points.get(idx) {
            Some(q) if q.x == x => q.left,
            _ => {
                if idx == 0 {
                    return self.left_tail;
                }
                let p = self.points[idx - 1];
                match self.points.get(idx) {
                    None => p.value,
                    Some(q) => interpolate(p.x, p.value, q.x, q.left, x),
                }
            }
        }
    }

    /// Size of the jump at `x` (zero away from breakpoints).
    pub fn jump_at(&self, x: f64) -> f64 {
        match self.points.binary_search_by(|p| p.x.total_cmp(&x)) {
            Ok(i) => self.points[i].jump(),
            Err(_) => 0.0,
        }
    }

    /// The native affine piece containing `x` (right-open).
    pub fn segment_at(&self, x: f64) -> Segment {
        let idx = self.points.partition_point(|p| p.x <= x);
        if idx == 0 {
            return Segment {
                x0: f64::NEG_INFINITY,
                v0: self.left_tail,
                x1: self.points.first().map_or(f64::INFINITY, |p| p.x),
                l1: self.left_tail,
            };
        }
        let p = self.points[idx - 1];
        match self.points.get(idx) {
            None => Segment {
                x0: p.x,
                v0: p.value,
                x1: f64::INFINITY,
                l1: p.value,
            },
            Some(q) => Segment {
                x0: p.x,
                v0: p.value,
                x1: q.x,
                l1: q.left,
            },
        }
    }

    /// Affine pieces between consecutive breakpoints (tails excluded).
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.points.windows(2).map(|w| Segment {
            x0: w[0].x,
            v0: w[0].value,
            x1: w[1].x,
            l1: w[1].left,
        })
    }

    pub fn sup(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| [p.left, p.value])
            .fold(self.left_tail, f64::max)
    }

    pub fn inf(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| [p.left, p.value])
            .fold(self.left_tail, f64::min)
    }

    pub fn is_nondecreasing(&self) -> bool {
        let mut prev = self.left_tail;
        for p in &self.points {
            if p.left < prev || p.value < p.left {
                return false;
            }
            prev = p.value;
        }
        true
    }

    pub fn is_nonincreasing(&self) -> bool {
        let mut prev = self.left_tail;
        for p in &self.points {
            if p.left > prev || p.value > p.left {
                return false;
            }
            prev = p.value;
        }
        true
    }

    pub fn is_continuous(&self) -> bool {
        self.points.iter().all(|p| p.left == p.value)
    }

    pub fn is_constant(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.left == self.left_tail && p.value == self.left_tail)
    }

    /// `x ↦ self(x - m)`.
    pub fn translate(&self, m: f64) -> Self {
        PiecewiseLinear {
            left_tail: self.left_tail,
            points: self
                .points
                .iter()
                .map(|p| Breakpoint::new(p.x + m, p.left, p.value))
                .collect(),
        }
    }

    /// Applies `op` to every stored level. Only affine `op` keeps the result
    /// equal to `op ∘ self` between breakpoints.
    pub fn map_values(&self, op: impl Fn(f64) -> f64) -> Self {
        PiecewiseLinear {
            left_tail: op(self.left_tail),
            points: self
                .points
                .iter()
                .map(|p| Breakpoint::new(p.x, op(p.left), op(p.value)))
                .collect(),
        }
        .canonical()
    }

    /// Pointwise combination on the merged breakpoints. Exact for `op` affine
    /// in both arguments.
    pub fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let points = merged_xs(self, other)
            .into_iter()
            .map(|x| {
                Breakpoint::new(
                    x,
                    op(self.eval_left(x), other.eval_left(x)),
                    op(self.eval(x), other.eval(x)),
                )
            })
            .collect();
        PiecewiseLinear {
            left_tail: op(self.left_tail, other.left_tail),
            points,
        }
        .canonical()
    }

    /// Keeps the function on `(-∞, m)` and replaces it by `level` on `[m, ∞)`.
    pub fn truncate_at(&self, m: f64, level: f64) -> Self {
        let mut points: Vec<Breakpoint> =
            self.points.iter().copied().filter(|p| p.x < m).collect();
        points.push(Breakpoint::new(m, self.eval_left(m), level));
        PiecewiseLinear {
            left_tail: self.left_tail,
            points,
        }
        .canonical()
    }

    /// Replaces the function by `level` on `(-∞, a)` and keeps it on `[a, ∞)`.
    pub fn truncate_below(&self, a: f64, level: f64) -> Self {
        let mut points = vec![Breakpoint::new(a, level, self.eval(a))];
        points.extend(self.points.iter().copied().filter(|p| p.x > a));
        PiecewiseLinear {
            left_tail: level,
            points,
        }
        .canonical()
    }

    /// Drops breakpoints that carry no information: no jump and the same
    /// slope on both sides (tails count as flat).
    pub fn canonical(mut self) -> Self {
        loop {
            let n = self.points.len();
            let redundant = (0..n).find(|&i| {
                let p = self.points[i];
                if p.left != p.value {
                    return false;
                }
                let before = (i > 0).then(|| (self.points[i - 1], p));
                let after = self.points.get(i + 1).map(|q| (p, *q));
                match (before, after) {
                    (None, None) => true,
                    (None, Some((a, b))) => b.left == a.value,
                    (Some((a, b)), None) => b.left == a.value,
                    (Some((a, b)), Some((c, d))) => {
                        (b.left - a.value) * (d.x - c.x) == (d.left - c.value) * (b.x - a.x)
                    }
                }
            });
            match redundant {
                Some(i) => {
                    self.points.remove(i);
                }
                None => return self,
            }
        }
    }

    /// `self(x) <= other(x)` for every real `x`.
    pub fn le_everywhere(&self, other: &Self) -> bool {
        if self.left_tail > other.left_tail {
            return false;
        }
        merged_xs(self, other)
            .into_iter()
            .all(|x| self.eval_left(x) <= other.eval_left(x) && self.eval(x) <= other.eval(x))
    }

    /// Exact `∫_a^b g(x) dx` for finite `a <= b`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if a >= b || a.is_nan() || b.is_nan() {
            return 0.0;
        }
        let mut cuts: Vec<f64> = vec![a];
        cuts.extend(self.xs().filter(|&x| x > a && x < b));
        cuts.push(b);
        cuts.windows(2)
            .map(|w| {
                let seg = self.segment_at(w[0]);
                let lo = seg.eval(w[0]);
                let hi = if w[1] == seg.x1 { seg.l1 } else { seg.eval(w[1]) };
                0.5 * (lo + hi) * (w[1] - w[0])
            })
            .sum()
    }
}

/// Sorted union of the breakpoint abscissae of `a` and `b`.
pub fn merged_xs(a: &PiecewiseLinear, b: &PiecewiseLinear) -> Vec<f64> {
    let mut xs: Vec<f64> = a.xs().chain(b.xs()).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Result of searching for `inf{x : f(x) > g(x)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exceedance {
    /// `f <= g` everywhere.
    Never,
    /// `f > g` on a left half-line.
    FromMinusInfinity,
    /// The infimum of the exceedance set.
    At(f64),
}

/// Computes `inf{x : f(x) > g(x)}` exactly.
///
/// Each merged piece `[x, next)` is inspected at its right-continuous start
/// and at the left limits of its end. A strict crossing inside the piece is
/// located on the native piece of whichever function is flat there, so the
/// result does not depend on unrelated breakpoints of the other function.
pub fn first_exceedance(f: &PiecewiseLinear, g: &PiecewiseLinear) -> Exceedance {
    if f.tail_left() > g.tail_left() {
        return Exceedance::FromMinusInfinity;
    }
    let xs = merged_xs(f, g);
    for (i, &x) in xs.iter().enumerate() {
        let (fv, gv) = (f.eval(x), g.eval(x));
        if fv > gv {
            return Exceedance::At(x);
        }
        let Some(&next) = xs.get(i + 1) else {
            break;
        };
        let (fl, gl) = (f.eval_left(next), g.eval_left(next));
        if fl > gl {
            let root = if fv == fl {
                g.segment_at(x).level_point(fv)
            } else if gv == gl {
                f.segment_at(x).level_point(gv)
            } else {
                let t = (gv - fv) / ((fl - fv) - (gl - gv));
                x + (next - x) * t
            };
            return Exceedance::At(root.clamp(x, next));
        }
    }
    Exceedance::Never
}
