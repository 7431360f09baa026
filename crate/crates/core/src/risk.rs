//! Risk functionals on distribution functions.

use crate::distribution::Cdf;
use crate::duality::{self, TestFunction};
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::piecewise::{first_exceedance, Exceedance};
use crate::profile::{AcceptanceFamily, LossProfile, ProfileShape};
use crate::stieltjes::{stieltjes, ExpUtility, Integrand};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitenessCase {
    Finite,
    PlusInfinityTailDominated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskReport {
    pub value: ExtendedReal,
    /// `inf{x : F_P(x) > Λ(x)}` when it exists.
    pub violation_point: Option<f64>,
    pub finiteness_case: FinitenessCase,
}

impl RiskReport {
    fn at(x: f64) -> Self {
        RiskReport {
            value: ExtendedReal::Finite(-x),
            violation_point: Some(x),
            finiteness_case: FinitenessCase::Finite,
        }
    }

    fn plus_infinity() -> Self {
        RiskReport {
            value: ExtendedReal::PlusInfinity,
            violation_point: None,
            finiteness_case: FinitenessCase::PlusInfinityTailDominated,
        }
    }
}

/// `ΛV@R(P) = -inf{x : F_P(x) > Λ(x)}`.
pub fn lambda_var(p: &Cdf, profile: &LossProfile) -> Result<RiskReport> {
    profile.ensure_feasible()?;
    match first_exceedance(p.func(), profile.func()) {
        Exceedance::At(x) => Ok(RiskReport::at(x)),
        Exceedance::Never => Ok(RiskReport::plus_infinity()),
        // F_P starts at 0, so it cannot lie above Λ near -∞.
        Exceedance::FromMinusInfinity => Err(Error::func("profile is negative near -∞")),
    }
}

/// `V@R_λ(P) = -q⁺(λ)`.
pub fn var(p: &Cdf, lambda: f64) -> Result<f64> {
    Ok(-p.quantile_right(lambda)?)
}

/// `-sup{x : F_P(x) = 0}`, the negated left end of the support.
pub fn worst_case(p: &Cdf) -> ExtendedReal {
    ExtendedReal::Finite(-p.support().0)
}

/// `-u⁻¹(∫u dP)` for a strictly decreasing continuous `u`.
pub fn certainty_equivalent(p: &Cdf, u: &dyn Integrand) -> Result<f64> {
    let target = stieltjes(u, p.func(), f64::NEG_INFINITY, f64::INFINITY);
    if !target.is_finite() {
        return Err(Error::NotInvertible(target));
    }
    let (a, b) = p.support();
    let mut width = (b - a).max(1.0);
    let mut lo = a;
    let mut hi = b;
    let mut steps = 0;
    while u.value(lo) < target {
        lo -= width;
        width *= 2.0;
        steps += 1;
        if steps > 200 || !lo.is_finite() {
            return Err(Error::NotInvertible(target));
        }
    }
    while u.value(hi) > target {
        hi += width;
        width *= 2.0;
        steps += 1;
        if steps > 400 || !hi.is_finite() {
            return Err(Error::NotInvertible(target));
        }
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if u.value(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = if u.value(lo) == target { lo } else { 0.5 * (lo + hi) };
    Ok(-x)
}

/// `ln ∫ e^{-x} dP(x)`.
pub fn entropic(p: &Cdf) -> f64 {
    // Shifting by the left end keeps every weight in (0, 1].
    let shift = p.support().0;
    let u = ExpUtility { rate: 1.0, shift };
    let i = stieltjes(&u, p.func(), f64::NEG_INFINITY, f64::INFINITY);
    i.ln() - shift
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl SearchBracket {
    pub const DEFAULT_TOL: f64 = 1e-9;

    /// `±(1 + max |support bound|) · 10`.
    pub fn around(p: &Cdf, tol: f64) -> Self {
        let (a, b) = p.support();
        let r = (1.0 + a.abs().max(b.abs())) * 10.0;
        SearchBracket { lo: -r, hi: r, tol }
    }
}

/// `-sup{m : P ∈ 𝒜^m}` by bisection over `m`.
pub fn phi_from_family(
    p: &Cdf,
    family: &AcceptanceFamily,
    bracket: Option<SearchBracket>,
) -> Result<ExtendedReal> {
    let SearchBracket { mut lo, mut hi, tol } =
        bracket.unwrap_or_else(|| SearchBracket::around(p, SearchBracket::DEFAULT_TOL));
    if family.contains(hi, p)? {
        return Err(Error::Bracket(format!("P is accepted at the upper end m = {hi}")));
    }
    if !family.contains(lo, p)? {
        if let AcceptanceFamily::FromProfile(l) | AcceptanceFamily::Tilde(l) = family {
            if p.func().tail_left() > l.func().tail_left() {
                return Ok(ExtendedReal::PlusInfinity);
            }
        }
        return Err(Error::Bracket(format!("P is rejected at the lower end m = {lo}")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if family.contains(mid, p)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ExtendedReal::Finite(-lo))
}

/// ΛV@R for a continuous nonincreasing `Λ` through the `F̃_m` family:
/// `-sup{m : F_P(m-) <= Λ(m)}`.
pub fn lambda_var_tilde(p: &Cdf, profile: &LossProfile) -> Result<RiskReport> {
    if profile.shape() == ProfileShape::Increasing {
        return Err(Error::TildeRequiresDecreasing);
    }
    if !profile.is_continuous() {
        return Err(Error::TildeRequiresContinuous);
    }
    profile.ensure_feasible()?;
    let f = p.func();
    let l = profile.func();
    // G(m) = F(m-) - Λ(m) is nondecreasing and left-continuous, so the
    // accepted levels form a closed half-line (-∞, s].
    let xs = crate::piecewise::merged_xs(f, l);
    let mut prev: Option<f64> = None;
    for &x in &xs {
        let g_at = f.eval_left(x) - l.eval(x);
        if g_at > 0.0 {
            let Some(a) = prev else {
                return Err(Error::func("distribution function is positive at -∞"));
            };
            let g_start = f.eval(a) - l.eval(a);
            let fs = f.segment_at(a);
            let ls = l.segment_at(a);
            let root = if fs.is_flat() {
                ls.level_point(fs.v0)
            } else if ls.is_flat() {
                fs.level_point(ls.v0)
            } else {
                // Both affine on (a, x): solve the difference directly.
                let fl = f.eval_left(x);
                let ll = l.eval(x);
                a + (x - a) * (-g_start / ((fl - ll) - g_start))
            };
            return Ok(RiskReport::at(root.clamp(a, x)));
        }
        if f.eval(x) - l.eval(x) > 0.0 {
            return Ok(RiskReport::at(x));
        }
        prev = Some(x);
    }
    Ok(RiskReport::plus_infinity())
}

/// `(ΛV@R(T_α P), Λ^α V@R(P) - α)`.
pub fn translation_identity_check(
    p: &Cdf,
    profile: &LossProfile,
    alpha: f64,
) -> Result<(ExtendedReal, ExtendedReal)> {
    let lhs = lambda_var(&p.translate(alpha), profile)?.value;
    let rhs = lambda_var(p, &profile.shift(alpha))?.value.minus(alpha);
    Ok((lhs, rhs))
}

/// The risk measures offered by the library, with their dual functions.
#[derive(Debug, Clone, PartialEq)]
pub enum RiskMeasure {
    LambdaVar(LossProfile),
    Var(f64),
    WorstCase,
    Entropic,
    CertaintyEquivalent(ExpUtility),
}

impl RiskMeasure {
    pub fn name(&self) -> &'static str {
        match self {
            RiskMeasure::LambdaVar(_) => "lambda-var",
            RiskMeasure::Var(_) => "var",
            RiskMeasure::WorstCase => "worst-case",
            RiskMeasure::Entropic => "entropic",
            RiskMeasure::CertaintyEquivalent(_) => "certainty-eq",
        }
    }

    pub fn evaluate(&self, p: &Cdf) -> Result<ExtendedReal> {
        match self {
            RiskMeasure::LambdaVar(profile) => Ok(lambda_var(p, profile)?.value),
            RiskMeasure::Var(lambda) => Ok(ExtendedReal::Finite(var(p, *lambda)?)),
            RiskMeasure::WorstCase => Ok(worst_case(p)),
            RiskMeasure::Entropic => Ok(ExtendedReal::Finite(entropic(p))),
            RiskMeasure::CertaintyEquivalent(u) => {
                Ok(ExtendedReal::Finite(certainty_equivalent(p, u)?))
            }
        }
    }

    /// `γ(m, f) = sup{∫f dQ : Φ(Q) <= m}` in closed form.
    pub fn gamma(&self, m: f64, f: &TestFunction) -> Result<f64> {
        match self {
            RiskMeasure::LambdaVar(profile) => match profile.shape() {
                ProfileShape::Decreasing => duality::gamma_decreasing(m, f, profile),
                _ => duality::gamma_lambda(m, f, profile),
            },
            RiskMeasure::Var(lambda) => {
                duality::gamma_lambda(m, f, &LossProfile::constant(*lambda)?)
            }
            RiskMeasure::WorstCase => Ok(f.eval(-m)),
            RiskMeasure::Entropic => Err(Error::NoDualFunction("entropic")),
            RiskMeasure::CertaintyEquivalent(_) => Err(Error::NoDualFunction("certainty-eq")),
        }
    }

    /// Breakpoints that bound the region where `γ(·, f)` can change.
    pub fn profile_breakpoints(&self) -> Vec<f64> {
        match self {
            RiskMeasure::LambdaVar(p) => p.func().xs().collect(),
            _ => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::mixture;

    fn losses() -> Cdf {
        Cdf::from_samples(&[-10.0, -5.0, 0.0, 5.0]).unwrap()
    }

    #[test]
    fn dirac_values() {
        let d = Cdf::dirac(1.75).unwrap();
        let step = LossProfile::step(0.1, 0.3, 0.0).unwrap();
        assert_eq!(lambda_var(&d, &step).unwrap().value, ExtendedReal::Finite(-1.75));
        assert_eq!(var(&d, 0.4).unwrap(), -1.75);
        assert_eq!(worst_case(&d), ExtendedReal::Finite(-1.75));
        assert_eq!(entropic(&d), -1.75);
        let ce = certainty_equivalent(&d, &ExpUtility::new(1.0)).unwrap();
        assert!((ce + 1.75).abs() < 1e-12);
    }

    #[test]
    fn step_profile_uniform_example() {
        let p = Cdf::uniform(-0.1, 0.9).unwrap();
        let step = LossProfile::step(0.1, 0.3, 0.0).unwrap();
        let r = lambda_var(&p, &step).unwrap();
        let v = r.value.to_f64();
        assert!((v + 0.2).abs() < 1e-15, "{v}");
        let x = r.violation_point.unwrap();
        assert!((p.eval(x) - step.eval(x)).abs() < 1e-15);
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(var(&losses(), 0.25).unwrap(), 5.0);
        assert_eq!(worst_case(&losses()), ExtendedReal::Finite(10.0));
        assert!(var(&losses(), 1.0).is_err());
    }

    #[test]
    fn infeasible_profile_is_an_error() {
        let full = LossProfile::piecewise(
            vec![crate::piecewise::Breakpoint::new(0.0, 0.5, 1.0)],
            (0.5, 1.0),
            crate::distribution::Orientation::Nondecreasing,
        )
        .unwrap();
        assert!(matches!(
            lambda_var(&losses(), &full),
            Err(Error::InfeasibleProfile { .. })
        ));
    }

    #[test]
    fn two_point_certainty_equivalents() {
        let p = mixture(&Cdf::dirac(0.0).unwrap(), &Cdf::dirac(-1.0).unwrap(), 0.5).unwrap();
        let expected = ((1.0 + std::f64::consts::E) / 2.0).ln();
        assert!((entropic(&p) - expected).abs() < 1e-14);
        let ce = certainty_equivalent(&p, &ExpUtility::new(1.0)).unwrap();
        assert!((ce - expected).abs() < 1e-11);
    }

    #[test]
    fn family_bisection_examples() {
        let worst = AcceptanceFamily::FromProfile(LossProfile::constant(0.0).unwrap());
        let v = phi_from_family(&Cdf::dirac(2.5).unwrap(), &worst, None).unwrap();
        assert!((v.to_f64() + 2.5).abs() < 1e-9);
        let step = AcceptanceFamily::FromProfile(LossProfile::step(0.1, 0.3, 0.0).unwrap());
        let v = phi_from_family(&Cdf::uniform(-0.1, 0.9).unwrap(), &step, None).unwrap();
        assert!((v.to_f64() + 0.2).abs() < 1e-9);
        let narrow = SearchBracket {
            lo: -1.0,
            hi: 1.0,
            tol: 1e-9,
        };
        assert!(matches!(
            phi_from_family(&Cdf::dirac(-5.0).unwrap(), &worst, Some(narrow)),
            Err(Error::Bracket(_))
        ));
    }

    #[test]
    fn tilde_examples() {
        let d = LossProfile::piecewise(
            vec![
                crate::piecewise::Breakpoint::continuous(-1.0, 0.9),
                crate::piecewise::Breakpoint::continuous(1.0, 0.05),
            ],
            (0.9, 0.05),
            crate::distribution::Orientation::Nonincreasing,
        )
        .unwrap();
        let z = Cdf::dirac(0.0).unwrap();
        assert_eq!(lambda_var_tilde(&z, &d).unwrap().value, ExtendedReal::Finite(-0.0));
        let c = LossProfile::constant(0.3).unwrap();
        assert_eq!(
            lambda_var_tilde(&losses(), &c).unwrap(),
            lambda_var(&losses(), &c).unwrap()
        );
        let step = LossProfile::step(0.1, 0.3, 0.0).unwrap();
        assert_eq!(lambda_var_tilde(&z, &step), Err(Error::TildeRequiresDecreasing));
    }

    #[test]
    fn translation_examples() {
        let step = LossProfile::step(0.1, 0.3, 0.0).unwrap();
        let p = Cdf::uniform(-0.1, 0.9).unwrap();
        let (l, r) = translation_identity_check(&p, &step, 0.0).unwrap();
        assert_eq!(l, r);
        let (l, r) = translation_identity_check(&p, &step, 1.0).unwrap();
        assert!((l.to_f64() - r.to_f64()).abs() < 1e-15);
        let c = LossProfile::constant(0.25).unwrap();
        let (l, r) = translation_identity_check(&losses(), &c, 3.0).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.to_f64(), var(&losses(), 0.25).unwrap() - 3.0);
    }
}
