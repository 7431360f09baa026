//! Distribution functions on ℝ in the piecewise class.
//!
//! [`MonotoneRC`] is a right-continuous monotone piecewise-linear function
//! with values in `[0, 1]`; [`Cdf`] adds the limits 0 at `-∞` and 1 at `+∞`.
//! Every constructor canonicalizes, so structural equality is equality of
//! functions (up to exact collinearity of stored points).

use crate::error::{Error, Result};
use crate::piecewise::{Breakpoint, PiecewiseLinear};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Nondecreasing,
    Nonincreasing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRC {
    func: PiecewiseLinear,
    orientation: Orientation,
}

impl MonotoneRC {
    pub fn new(func: PiecewiseLinear, orientation: Orientation) -> Result<Self> {
        let monotone = match orientation {
            Orientation::Nondecreasing => func.is_nondecreasing(),
            Orientation::Nonincreasing => func.is_nonincreasing(),
        };
        if !monotone {
            return Err(Error::func(format!("function is not {orientation:?}")));
        }
        if func.inf() < 0.0 || func.sup() > 1.0 {
            return Err(Error::func("values outside [0, 1]"));
        }
        Ok(MonotoneRC {
            func: func.canonical(),
            orientation,
        })
    }

    pub fn func(&self) -> &PiecewiseLinear {
        &self.func
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.func.eval(x)
    }

    pub fn eval_left(&self, x: f64) -> f64 {
        self.func.eval_left(x)
    }

    pub fn tail_left(&self) -> f64 {
        self.func.tail_left()
    }

    pub fn tail_right(&self) -> f64 {
        self.func.tail_right()
    }
}

/// Convex combination of two levels in `[0, 1]`, clamped so that rounding
/// never leaves the interval spanned by the inputs.
pub fn mix_value(a: f64, b: f64, lambda: f64) -> f64 {
    let v = lambda * a + (1.0 - lambda) * b;
    v.clamp(a.min(b), a.max(b))
}

/// A distribution function `F_P(x) = P(-∞, x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cdf(MonotoneRC);

impl Cdf {
    pub fn new(func: PiecewiseLinear) -> Result<Self> {
        if func.tail_left() != 0.0 || func.tail_right() != 1.0 {
            return Err(Error::func(format!(
                "a distribution function needs limits 0 and 1, got {} and {}",
                func.tail_left(),
                func.tail_right()
            )));
        }
        Ok(Cdf(MonotoneRC::new(func, Orientation::Nondecreasing)?))
    }

    pub fn from_points(points: Vec<Breakpoint>) -> Result<Self> {
        Cdf::new(PiecewiseLinear::new(points)?)
    }

    /// The point mass at `x`.
    pub fn dirac(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::param("dirac location must be finite"));
        }
        Cdf::from_points(vec![Breakpoint::new(x, 0.0, 1.0)])
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::param(format!("uniform needs a < b, got [{a}, {b}]")));
        }
        Cdf::from_points(vec![
            Breakpoint::continuous(a, 0.0),
            Breakpoint::continuous(b, 1.0),
        ])
    }

    /// Empirical distribution; tied samples merge into one jump.
    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::NoData);
        }
        if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
            return Err(Error::param(format!("non-finite sample {bad}")));
        }
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mut points = Vec::new();
        let mut below = 0usize;
        let mut i = 0;
        while i < sorted.len() {
            let x = sorted[i];
            let mut j = i;
            while j < sorted.len() && sorted[j] == x {
                j += 1;
            }
            let left = below as f64 / n;
            let value = if j == sorted.len() { 1.0 } else { j as f64 / n };
            points.push(Breakpoint::new(x, left, value));
            below = j;
            i = j;
        }
        Cdf::from_points(points)
    }

    pub fn payload(&self) -> &MonotoneRC {
        &self.0
    }

    pub fn func(&self) -> &PiecewiseLinear {
        self.0.func()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    pub fn eval_left(&self, x: f64) -> f64 {
        self.0.eval_left(x)
    }

    /// Atoms `(x, mass)` in increasing order of `x`.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        self.func()
            .points()
            .iter()
            .filter(|p| p.jump() > 0.0)
            .map(|p| (p.x, p.jump()))
            .collect()
    }

    pub fn has_atom_at(&self, x: f64) -> bool {
        self.func().jump_at(x) > 0.0
    }

    pub fn is_continuous(&self) -> bool {
        self.func().is_continuous()
    }

    /// Smallest and largest point of the support.
    pub fn support(&self) -> (f64, f64) {
        let f = self.func();
        // A canonical CDF starts changing at its first breakpoint and is
        // constant after its last one.
        (
            f.first_x().expect("a CDF has breakpoints"),
            f.last_x().expect("a CDF has breakpoints"),
        )
    }

    /// `T_m P`: the law of `X + m`.
    pub fn translate(&self, m: f64) -> Self {
        Cdf(MonotoneRC {
            func: self.func().translate(m),
            orientation: Orientation::Nondecreasing,
        })
    }

    /// `sup{x : F(x) <= lambda}` for `lambda` in `(0, 1)`.
    pub fn quantile_right(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::param(format!("quantile level {lambda} not in (0, 1)")));
        }
        let pts = self.func().points();
        for (i, p) in pts.iter().enumerate() {
            if p.value > lambda {
                return Ok(p.x);
            }
            if let Some(q) = pts.get(i + 1) {
                if q.left > lambda {
                    return Ok(crate::piecewise::affine_inverse(
                        p.x, p.value, q.x, q.left, lambda,
                    ));
                }
            }
        }
        unreachable!("the last breakpoint of a CDF has value 1")
    }
}

/// `λP + (1-λ)Q`, the compound lottery.
pub fn mixture(p: &Cdf, q: &Cdf, lambda: f64) -> Result<Cdf> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::param(format!("mixture weight {lambda} not in [0, 1]")));
    }
    let func = p.func().zip_with(q.func(), |a, b| mix_value(a, b, lambda));
    Ok(Cdf(MonotoneRC {
        func,
        orientation: Orientation::Nondecreasing,
    }))
}

/// `true` iff `q ≼ p`, i.e. `F_p <= F_q` everywhere.
pub fn dominates(p: &Cdf, q: &Cdf) -> bool {
    p.func().le_everywhere(q.func())
}

/// Checks `F_{P_n}(x) → F_P(x)` at the supplied continuity points of `F_P`.
///
/// Along the second half of the sequence the error at every probe must be
/// nonincreasing, and the error of the last element must be below `tol`.
pub fn converges_weakly(seq: &[Cdf], p: &Cdf, probes: &[f64], tol: f64) -> Result<bool> {
    if let Some(&x) = probes.iter().find(|&&x| p.has_atom_at(x)) {
        return Err(Error::NotContinuityPoint(x));
    }
    let Some(last) = seq.last() else {
        return Err(Error::NoData);
    };
    let tail = &seq[seq.len() / 2..];
    for &x in probes {
        let target = p.eval(x);
        let errors: Vec<f64> = tail.iter().map(|q| (q.eval(x) - target).abs()).collect();
        if errors.windows(2).any(|w| w[1] > w[0]) {
            return Ok(false);
        }
        if (last.eval(x) - target).abs() >= tol && (last.eval(x) - target).abs() != 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}
