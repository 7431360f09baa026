//! Probability/Loss functions and the acceptance families built from them.

use crate::distribution::{Cdf, MonotoneRC, Orientation};
use crate::error::{Error, Result};
use crate::piecewise::{Breakpoint, PiecewiseLinear};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileShape {
    Constant,
    Increasing,
    Decreasing,
}

/// A right-continuous monotone `Λ : ℝ → [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossProfile {
    payload: MonotoneRC,
    sup_value: f64,
    inf_value: f64,
}

impl LossProfile {
    pub fn constant(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(Error::param(format!("profile level {lambda} is negative")));
        }
        if lambda >= 1.0 {
            return Err(Error::InfeasibleProfile { sup: lambda });
        }
        LossProfile::from_function(PiecewiseLinear::constant(lambda))
    }

    /// `λ^m` on `(-∞, xbar)` and `λ^M` on `[xbar, ∞)`.
    pub fn step(lambda_min: f64, lambda_max: f64, xbar: f64) -> Result<Self> {
        if !(0.0 <= lambda_min && lambda_min <= lambda_max) {
            return Err(Error::param(format!(
                "step profile needs 0 <= lambda_min <= lambda_max, got {lambda_min} and {lambda_max}"
            )));
        }
        if lambda_max >= 1.0 {
            return Err(Error::InfeasibleProfile { sup: lambda_max });
        }
        if !xbar.is_finite() {
            return Err(Error::param("step threshold must be finite"));
        }
        LossProfile::from_function(PiecewiseLinear::new(vec![Breakpoint::new(
            xbar, lambda_min, lambda_max,
        )])?)
    }

    /// Wraps explicit breakpoints. Profiles with `sup Λ = 1` are accepted
    /// here and reported by [`LossProfile::is_feasible`].
    pub fn piecewise(
        points: Vec<Breakpoint>,
        tails: (f64, f64),
        orientation: Orientation,
    ) -> Result<Self> {
        let func = PiecewiseLinear::with_tails(points, tails)?;
        let payload = MonotoneRC::new(func, orientation)?;
        Ok(LossProfile::wrap(payload))
    }

    /// Wraps a function, inferring its orientation.
    pub fn from_function(func: PiecewiseLinear) -> Result<Self> {
        let orientation = if func.is_nondecreasing() {
            Orientation::Nondecreasing
        } else {
            Orientation::Nonincreasing
        };
        Ok(LossProfile::wrap(MonotoneRC::new(func, orientation)?))
    }

    fn wrap(payload: MonotoneRC) -> Self {
        let sup_value = payload.func().sup();
        let inf_value = payload.func().inf();
        LossProfile {
            payload,
            sup_value,
            inf_value,
        }
    }

    pub fn payload(&self) -> &MonotoneRC {
        &self.payload
    }

    pub fn func(&self) -> &PiecewiseLinear {
        self.payload.func()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.payload.eval(x)
    }

    pub fn eval_left(&self, x: f64) -> f64 {
        self.payload.eval_left(x)
    }

    pub fn sup_value(&self) -> f64 {
        self.sup_value
    }

    pub fn inf_value(&self) -> f64 {
        self.inf_value
    }

    pub fn shape(&self) -> ProfileShape {
        let f = self.func();
        if f.is_constant() {
            ProfileShape::Constant
        } else if f.is_nondecreasing() {
            ProfileShape::Increasing
        } else {
            ProfileShape::Decreasing
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.func().is_continuous()
    }

    pub fn is_feasible(&self) -> bool {
        self.sup_value < 1.0
    }

    pub fn ensure_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::InfeasibleProfile {
                sup: self.sup_value,
            })
        }
    }

    /// `Λ^α(x) = Λ(x + α)`.
    pub fn shift(&self, alpha: f64) -> Self {
        LossProfile {
            payload: MonotoneRC::new(self.func().translate(-alpha), self.payload.orientation())
                .expect("translation keeps monotonicity and range"),
            sup_value: self.sup_value,
            inf_value: self.inf_value,
        }
    }

    /// `1 - Λ` as a function, used as an integrand.
    pub fn complement(&self) -> PiecewiseLinear {
        self.func().map_values(|v| 1.0 - v)
    }
}

/// `F_m = Λ` on `(-∞, m)` and `1` on `[m, ∞)`.
///
/// The result is nondecreasing only when `Λ` is, so it is returned as a
/// plain function.
pub fn family_member(profile: &LossProfile, m: f64) -> PiecewiseLinear {
    profile.func().truncate_at(m, 1.0)
}

/// `F̃_m = Λ(m)` on `(-∞, m)` and `1` on `[m, ∞)`.
pub fn family_member_tilde(profile: &LossProfile, m: f64) -> Result<MonotoneRC> {
    if profile.shape() == ProfileShape::Increasing {
        return Err(Error::TildeRequiresDecreasing);
    }
    let level = profile.eval(m);
    let func = PiecewiseLinear::new(vec![Breakpoint::new(m, level, 1.0)])?.canonical();
    MonotoneRC::new(func, Orientation::Nondecreasing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    /// For `m` in `(m_k, m_{k+1}]` use the member stored at `m_{k+1}`.
    StepLeft,
    /// Only the stored levels are defined.
    None,
}

/// A finite table of family members indexed by increasing levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyTable {
    levels: Vec<f64>,
    members: Vec<MonotoneRC>,
    rule: Interpolation,
}

impl FamilyTable {
    /// Checks the table-level feasibility conditions: members nondecreasing
    /// in `x` with limit 1 at `+∞`, and pointwise nonincreasing in `m`.
    pub fn new(entries: Vec<(f64, MonotoneRC)>, rule: Interpolation) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NoData);
        }
        for w in entries.windows(2) {
            if w[0].0.partial_cmp(&w[1].0) != Some(std::cmp::Ordering::Less) {
                return Err(Error::param("table levels must be strictly increasing"));
            }
            if !w[1].1.func().le_everywhere(w[0].1.func()) {
                return Err(Error::func(format!(
                    "member at m = {} exceeds the member at m = {}",
                    w[1].0, w[0].0
                )));
            }
        }
        for (m, member) in &entries {
            if member.orientation() != Orientation::Nondecreasing || member.tail_right() != 1.0 {
                return Err(Error::func(format!(
                    "member at m = {m} is not a nondecreasing function with limit 1"
                )));
            }
        }
        let (levels, members) = entries.into_iter().unzip();
        Ok(FamilyTable {
            levels,
            members,
            rule,
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn member(&self, m: f64) -> Result<&MonotoneRC> {
        let idx = self.levels.partition_point(|&l| l < m);
        match (self.rule, self.levels.get(idx)) {
            (_, Some(&l)) if l == m => Ok(&self.members[idx]),
            (Interpolation::StepLeft, Some(_)) if idx > 0 => Ok(&self.members[idx]),
            _ => Err(Error::OutsideTable(m)),
        }
    }
}

/// The family `{F_m}` defining acceptance sets `𝒜^m = {Q : F_Q <= F_m}`.
#[derive(Debug, Clone, PartialEq)]
pub enum AcceptanceFamily {
    FromProfile(LossProfile),
    Tilde(LossProfile),
    Table(FamilyTable),
}

impl AcceptanceFamily {
    pub fn tilde(profile: LossProfile) -> Result<Self> {
        if profile.shape() == ProfileShape::Increasing {
            return Err(Error::TildeRequiresDecreasing);
        }
        if !profile.is_continuous() {
            return Err(Error::TildeRequiresContinuous);
        }
        Ok(AcceptanceFamily::Tilde(profile))
    }

    pub fn member(&self, m: f64) -> Result<PiecewiseLinear> {
        match self {
            AcceptanceFamily::FromProfile(p) => Ok(family_member(p, m)),
            AcceptanceFamily::Tilde(p) => Ok(family_member_tilde(p, m)?.func().clone()),
            AcceptanceFamily::Table(t) => Ok(t.member(m)?.func().clone()),
        }
    }

    pub fn contains(&self, m: f64, q: &Cdf) -> Result<bool> {
        acceptance_contains(self, m, q)
    }
}

pub fn acceptance_contains(family: &AcceptanceFamily, m: f64, q: &Cdf) -> Result<bool> {
    Ok(q.func().le_everywhere(&family.member(m)?))
}
