//! Dual variables, the dual function `γ` and the lower representation `R⁻`.
//!
//! Test functions are bounded continuous nonincreasing functions. For the
//! ΛV@R family every quantity has a closed form on the piecewise class; the
//! brute-force routes over finite candidate sets are provided as oracles.

use crate::distribution::Cdf;
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::piecewise::{affine_inverse, merged_xs, Breakpoint, PiecewiseLinear};
use crate::profile::{AcceptanceFamily, LossProfile, ProfileShape};
use crate::risk::RiskMeasure;
use crate::stieltjes::stieltjes;

/// A function in `C_b⁻`: continuous, nonincreasing, piecewise linear.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    func: PiecewiseLinear,
}

impl TestFunction {
    pub fn new(func: PiecewiseLinear) -> Result<Self> {
        if !func.is_continuous() {
            return Err(Error::func("test functions must be continuous"));
        }
        if !func.is_nonincreasing() {
            return Err(Error::func("test functions must be nonincreasing"));
        }
        Ok(TestFunction {
            func: func.canonical(),
        })
    }

    /// Continuous breakpoints `(x, f(x))`.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|&(x, v)| Breakpoint::continuous(x, v))
            .collect();
        TestFunction::new(PiecewiseLinear::new(pts)?)
    }

    /// `f = -F_Q` for an atomless `Q`.
    pub fn from_cdf_negated(q: &Cdf) -> Result<Self> {
        if !q.is_continuous() {
            return Err(Error::RequiresContinuous);
        }
        TestFunction::new(q.func().map_values(|v| -v))
    }

    pub fn func(&self) -> &PiecewiseLinear {
        &self.func
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.func.eval(x)
    }

    /// `f(-∞)`.
    pub fn limit_left(&self) -> f64 {
        self.func.tail_left()
    }

    /// `f(+∞)`.
    pub fn limit_right(&self) -> f64 {
        self.func.tail_right()
    }

    /// `∫ f dP`.
    pub fn integrate(&self, p: &Cdf) -> f64 {
        stieltjes(&self.func, p.func(), f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// Left-continuous inverse `sup{x : f(x) >= y}` of a nonincreasing `f`.
///
/// Returns `+∞` at `y = f(+∞)`; levels outside `[f(+∞), f(-∞)]` are rejected.
pub fn left_inverse(f: &TestFunction, y: f64) -> Result<f64> {
    if !(y >= f.limit_right() && y <= f.limit_left()) {
        return Err(Error::OutsideRange(y));
    }
    if y == f.limit_right() {
        return Ok(f64::INFINITY);
    }
    let pts = f.func().points();
    let i = pts.iter().rposition(|p| p.value >= y).expect("y <= f(-∞)");
    let p = pts[i];
    let q = pts[i + 1];
    Ok(affine_inverse(p.x, p.value, q.x, q.left, y).clamp(p.x, q.x))
}

/// `γ(m, f) = ∫ f dF_{-m} + F_{-m}(-∞) f(-∞)`.
pub fn gamma_family(m: f64, f: &TestFunction, family: &AcceptanceFamily) -> Result<f64> {
    let member = family.member(-m)?;
    if !member.is_nondecreasing() {
        return Err(Error::MemberNotNondecreasing);
    }
    let integral = stieltjes(f.func(), &member, f64::NEG_INFINITY, f64::INFINITY);
    Ok(integral + member.tail_left() * f.limit_left())
}

fn ensure_nondecreasing(profile: &LossProfile) -> Result<()> {
    profile.ensure_feasible()?;
    if profile.shape() == ProfileShape::Decreasing {
        return Err(Error::param(
            "this formula needs a nondecreasing profile; use the decreasing variant",
        ));
    }
    Ok(())
}

/// `γ(m, f) = f(-∞) + ∫_{-∞}^{-m} (1 - Λ) df`.
pub fn gamma_lambda(m: f64, f: &TestFunction, profile: &LossProfile) -> Result<f64> {
    ensure_nondecreasing(profile)?;
    let g = profile.complement();
    Ok(f.limit_left() + stieltjes(&g, f.func(), f64::NEG_INFINITY, -m))
}

/// `γ(m, f) = (1 - Λ(-m)) f(-m) + Λ(-m) f(-∞)` for continuous nonincreasing `Λ`.
pub fn gamma_decreasing(m: f64, f: &TestFunction, profile: &LossProfile) -> Result<f64> {
    if profile.shape() == ProfileShape::Increasing {
        return Err(Error::TildeRequiresDecreasing);
    }
    if !profile.is_continuous() {
        return Err(Error::TildeRequiresContinuous);
    }
    profile.ensure_feasible()?;
    let l = profile.eval(-m);
    Ok((1.0 - l) * f.eval(-m) + l * f.limit_left())
}

/// `max{∫ f dQ : Q in candidates, risk(Q) <= m}`.
pub fn gamma_bruteforce(
    m: f64,
    f: &TestFunction,
    risk: impl Fn(&Cdf) -> Result<ExtendedReal>,
    candidates: &[Cdf],
) -> Result<f64> {
    let mut best: Option<f64> = None;
    for q in candidates {
        if risk(q)? <= ExtendedReal::Finite(m) {
            let v = f.integrate(q);
            best = Some(best.map_or(v, |b: f64| b.max(v)));
        }
    }
    best.ok_or(Error::NoFeasibleCandidate)
}

/// The maximizing sequence `F_{Q_n} = F_{-m} 1_{[-n, ∞)}`, `n = 1..=count`.
pub fn truncation_candidates(profile: &LossProfile, m: f64, count: usize) -> Result<Vec<Cdf>> {
    let member = AcceptanceFamily::FromProfile(profile.clone()).member(-m)?;
    (1..=count)
        .map(|n| Cdf::new(member.truncate_below(-(n as f64), 0.0)))
        .collect()
}

/// `(u, H(u))` with `H(u) = ∫_{(-∞, u]} (1 - Λ) df` at the merged breakpoints.
fn h_pieces(f: &TestFunction, profile: &LossProfile) -> Vec<(f64, f64)> {
    let xs = merged_xs(f.func(), profile.func());
    let mut h = 0.0;
    let mut out = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        out.push((x, h));
        if let Some(&next) = xs.get(i + 1) {
            let s = f.func().segment_at(x).slope();
            if s != 0.0 {
                h += s * ((next - x) - profile.func().integral(x, next));
            }
        }
    }
    out
}

/// `R⁻(t, f) = -H^l(t - f(-∞))` with `H(u) = ∫_{(-∞, u]} (1 - Λ) df`.
///
/// `H` is continuous and nonincreasing; the left inverse is
/// `sup{u : H(u) >= y}`. A level at or below `H(+∞)` would give `-∞` and is
/// reported as [`Error::DualOutOfRange`].
pub fn r_minus(t: f64, f: &TestFunction, profile: &LossProfile) -> Result<ExtendedReal> {
    ensure_nondecreasing(profile)?;
    let y = t - f.limit_left();
    if y > 0.0 {
        return Ok(ExtendedReal::PlusInfinity);
    }
    let pieces = h_pieces(f, profile);
    let h_end = pieces.last().map_or(0.0, |p| p.1);
    if y <= h_end {
        return Err(Error::DualOutOfRange);
    }
    for w in pieces.windows(2) {
        let ((a, ha), (b, hb)) = (w[0], w[1]);
        if hb >= y {
            continue;
        }
        // H(a + d) - y = c0 + p d + q d² on the piece, p <= 0 <= q.
        let s = f.func().segment_at(a).slope();
        let la = profile.eval(a);
        let k = profile.func().segment_at(a).slope();
        let p = s * (1.0 - la);
        let q = -s * k / 2.0;
        let c0 = ha - y;
        let disc = (p * p - 4.0 * q * c0).max(0.0).sqrt();
        let denom = disc - p;
        let d = if denom > 0.0 { 2.0 * c0 / denom } else { 0.0 };
        let u = (a + d).clamp(a, b);
        return Ok(ExtendedReal::Finite(-u));
    }
    let last = pieces.last().map_or(0.0, |p| p.0);
    Ok(ExtendedReal::Finite(-last))
}

/// `inf{m : γ(m) >= t}` by bisection on `[lo, hi]`.
///
/// The returned value is the lower end of the final bracket, so it never
/// exceeds the true infimum.
pub fn r_minus_from_gamma(
    t: f64,
    gamma: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ExtendedReal> {
    let (mut lo, mut hi) = (lo, hi);
    if gamma(hi)? < t {
        return Ok(ExtendedReal::PlusInfinity);
    }
    if gamma(lo)? >= t {
        return Err(Error::Bracket(format!("γ({lo}) already reaches {t}")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gamma(mid)? >= t {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ExtendedReal::Finite(lo))
}

/// A bracket outside of which `γ(·, f)` is constant.
pub fn gamma_bracket(f: &TestFunction, extra: &[f64]) -> (f64, f64) {
    let xs: Vec<f64> = f.func().xs().chain(extra.iter().copied()).collect();
    let lo_x = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_x = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if xs.is_empty() {
        (-1.0, 1.0)
    } else {
        (-hi_x - 1.0, -lo_x + 1.0)
    }
}

/// `min{risk(Q) : Q in candidates, ∫ f dQ >= t}`, `+∞` if none qualifies.
pub fn r_direct(
    t: f64,
    f: &TestFunction,
    risk: impl Fn(&Cdf) -> Result<ExtendedReal>,
    candidates: &[Cdf],
) -> Result<ExtendedReal> {
    let mut best = ExtendedReal::PlusInfinity;
    for q in candidates {
        if f.integrate(q) >= t {
            let v = risk(q)?;
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualBoundReport {
    pub phi_value: ExtendedReal,
    /// `-∞` when no test function gives a finite bound.
    pub best_lower_bound: f64,
    pub gap: ExtendedReal,
    pub argmax_function_index: Option<usize>,
}

/// Relative slack subtracted from `∫ f dP` before inverting `γ`, so that
/// rounding in the two integrals can never push the bound above `Φ(P)`.
pub const DUAL_SLACK: f64 = 1e-10;

/// `max_f R⁻(∫ f dP, f)` over `fs`, compared with `Φ(P)`.
pub fn representation_bound(
    p: &Cdf,
    risk: &RiskMeasure,
    fs: &[TestFunction],
    tol: f64,
) -> Result<DualBoundReport> {
    if fs.is_empty() {
        return Err(Error::NoData);
    }
    let phi_value = risk.evaluate(p)?;
    let extra = risk.profile_breakpoints();
    let mut best = f64::NEG_INFINITY;
    let mut arg = None;
    for (i, f) in fs.iter().enumerate() {
        let t = f.integrate(p);
        let t = t - DUAL_SLACK * (1.0 + t.abs());
        let (lo, hi) = gamma_bracket(f, &extra);
        let r = match r_minus_from_gamma(t, |m| risk.gamma(m, f), lo, hi, tol) {
            Ok(r) => r.to_f64(),
            Err(Error::Bracket(_)) => continue,
            Err(e) => return Err(e),
        };
        if r > best {
            best = r;
            arg = Some(i);
        }
    }
    let gap = match phi_value {
        ExtendedReal::PlusInfinity => ExtendedReal::PlusInfinity,
        ExtendedReal::Finite(v) => {
            ExtendedReal::from_f64(v - best).unwrap_or(ExtendedReal::Finite(0.0))
        }
    };
    Ok(DualBoundReport {
        phi_value,
        best_lower_bound: best,
        gap,
        argmax_function_index: arg,
    })
}

/// `-F_Q` for `Q = uniform(c, c + δ)` with `c` on `count` evenly spaced points
/// of `[lo, hi]`.
pub fn uniform_ladder(lo: f64, hi: f64, count: usize, delta: f64) -> Result<Vec<TestFunction>> {
    if count == 0 || delta.is_nan() || delta <= 0.0 {
        return Err(Error::param("ladder needs at least one function and δ > 0"));
    }
    (0..count)
        .map(|i| {
            let c = if count == 1 {
                lo
            } else {
                lo + (hi - lo) * (i as f64 / (count - 1) as f64)
            };
            TestFunction::from_cdf_negated(&Cdf::uniform(c, c + delta)?)
        })
        .collect()
}

/// Two-stage ladder: half the functions on a coarse grid over the support,
/// the rest refined around the best coarse position.
pub fn adaptive_ladder_bound(
    p: &Cdf,
    risk: &RiskMeasure,
    count: usize,
    delta: f64,
    tol: f64,
) -> Result<(Vec<TestFunction>, DualBoundReport)> {
    if count == 0 {
        return Err(Error::param("ladder needs at least one function"));
    }
    let (a, b) = p.support();
    let (lo, hi) = (a - delta, b);
    let coarse_n = count.div_ceil(2);
    let mut fs = uniform_ladder(lo, hi, coarse_n, delta)?;
    let coarse = representation_bound(p, risk, &fs, tol)?;
    let fine_n = count - coarse_n;
    if fine_n > 0 {
        let step = if coarse_n > 1 {
            (hi - lo) / (coarse_n - 1) as f64
        } else {
            (hi - lo).max(delta)
        };
        let centre = coarse
            .argmax_function_index
            .map_or(lo, |i| fs[i].func().first_x().unwrap_or(lo));
        fs.extend(uniform_ladder(centre - step, centre + step, fine_n, delta)?);
    }
    let report = representation_bound(p, risk, &fs, tol)?;
    Ok((fs, report))
}

/// `max_{n <= N} f(n) - risk(δ_n)`, a lower bound for the convex conjugate.
pub fn conjugate_divergence_witness(
    risk: impl Fn(&Cdf) -> Result<ExtendedReal>,
    f: &TestFunction,
    n_max: usize,
) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::param("N must be at least 1"));
    }
    let mut best = f64::NEG_INFINITY;
    for n in 1..=n_max {
        let x = n as f64;
        let v = f.eval(x) - risk(&Cdf::dirac(x)?)?.to_f64();
        best = best.max(v);
    }
    Ok(best)
}
