//! Seeded random fixtures and the named property suites.
//!
//! Generated data lives on dyadic grids (sample points on multiples of 1/64,
//! profile levels on multiples of 1/256) so that translations, comparisons
//! and breakpoint arithmetic are exact in floating point.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::{mixture, Cdf, Orientation};
use crate::duality::{
    gamma_bracket, gamma_bruteforce, gamma_lambda, r_minus_from_gamma, truncation_candidates,
    TestFunction, DUAL_SLACK,
};
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::piecewise::{Breakpoint, PiecewiseLinear};
use crate::profile::LossProfile;
use crate::risk::{lambda_var, var, worst_case, RiskMeasure};

pub const SUITES: [&str; 7] = [
    "mon",
    "qco",
    "translation",
    "reductions",
    "cfa",
    "cfb-counterexample",
    "duality-sandwich",
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A sample point `k/64` in `[-10, 10]`.
pub fn grid_point(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-640i32..=640) as f64 / 64.0
}

/// A level `k/256` in `[lo/256, hi/256]`.
pub fn grid_level(rng: &mut impl Rng, lo: u32, hi: u32) -> f64 {
    rng.gen_range(lo..=hi) as f64 / 256.0
}

fn distinct_points(rng: &mut impl Rng, count: usize) -> Vec<f64> {
    let mut ks: Vec<i32> = (-640..=640).collect();
    ks.partial_shuffle(rng, count);
    let mut xs: Vec<f64> = ks[..count].iter().map(|&k| k as f64 / 64.0).collect();
    xs.sort_by(f64::total_cmp);
    xs
}

fn sorted_levels(rng: &mut impl Rng, count: usize, lo: u32, hi: u32) -> Vec<f64> {
    let mut v: Vec<f64> = (0..count).map(|_| grid_level(rng, lo, hi)).collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn random_samples(rng: &mut impl Rng, max_atoms: usize) -> Vec<f64> {
    let n = rng.gen_range(1..=max_atoms);
    (0..n).map(|_| grid_point(rng)).collect()
}

/// Empirical distribution with at most `max_atoms` grid samples.
pub fn random_empirical(rng: &mut impl Rng, max_atoms: usize) -> Cdf {
    Cdf::from_samples(&random_samples(rng, max_atoms)).expect("nonempty finite samples")
}

/// A pair `(P, Q)` with `Q ≼ P`: every sample of `Q` lies weakly left of
/// its counterpart in `P`.
pub fn random_dominated_pair(rng: &mut impl Rng, max_atoms: usize) -> (Cdf, Cdf) {
    let xs = random_samples(rng, max_atoms);
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| x - rng.gen_range(0u32..=128) as f64 / 64.0)
        .collect();
    (
        Cdf::from_samples(&xs).expect("valid samples"),
        Cdf::from_samples(&ys).expect("valid samples"),
    )
}

/// Mixing weight `k/64` in `[0, 1]`.
pub fn random_weight(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0u32..=64) as f64 / 64.0
}

/// A feasible nondecreasing profile: constant, step, or piecewise with a mix
/// of jumps and ramps.
pub fn random_increasing_profile(rng: &mut impl Rng) -> LossProfile {
    match rng.gen_range(0..4) {
        0 => LossProfile::constant(grid_level(rng, 0, 255)).expect("feasible level"),
        1 => {
            let v = sorted_levels(rng, 2, 0, 255);
            LossProfile::step(v[0], v[1], grid_point(rng)).expect("ordered levels")
        }
        _ => {
            let k = rng.gen_range(1..=4);
            let xs = distinct_points(rng, k);
            let v = sorted_levels(rng, 2 * k, 0, 255);
            let pts = xs
                .iter()
                .enumerate()
                .map(|(i, &x)| Breakpoint::new(x, v[2 * i], v[2 * i + 1]))
                .collect();
            LossProfile::from_function(PiecewiseLinear::new(pts).expect("sorted points"))
                .expect("monotone levels")
        }
    }
}

/// A feasible nondecreasing profile that is constant between its jumps.
pub fn random_step_profile(rng: &mut impl Rng) -> LossProfile {
    let k = rng.gen_range(1..=4);
    let xs = distinct_points(rng, k);
    let v = sorted_levels(rng, k + 1, 0, 255);
    let pts = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| Breakpoint::new(x, v[i], v[i + 1]))
        .collect();
    LossProfile::from_function(PiecewiseLinear::new(pts).expect("sorted points"))
        .expect("monotone levels")
}

/// A feasible continuous nonincreasing profile.
pub fn random_decreasing_profile(rng: &mut impl Rng) -> LossProfile {
    let k = rng.gen_range(2..=5);
    let xs = distinct_points(rng, k);
    let mut v = sorted_levels(rng, k, 0, 255);
    v.reverse();
    let pts: Vec<Breakpoint> = xs
        .iter()
        .zip(&v)
        .map(|(&x, &l)| Breakpoint::continuous(x, l))
        .collect();
    LossProfile::piecewise(pts, (v[0], v[k - 1]), Orientation::Nonincreasing)
        .expect("monotone levels")
}

/// A continuous nonincreasing test function with `f(-∞) > f(+∞)`.
pub fn random_test_function(rng: &mut impl Rng) -> TestFunction {
    loop {
        let k = rng.gen_range(2..=6);
        let xs = distinct_points(rng, k);
        let mut v: Vec<f64> = sorted_levels(rng, k, 0, 512)
            .into_iter()
            .map(|l| l - 1.0)
            .collect();
        v.reverse();
        if v[0] == v[k - 1] {
            continue;
        }
        let pts: Vec<(f64, f64)> = xs.into_iter().zip(v).collect();
        return TestFunction::from_points(&pts).expect("monotone continuous points");
    }
}

/// `X_n ~ uniform(-λ^m - 1/n, 1 - λ^m - 1/n)` under the step profile
/// `(λ^m, λ^M, x̄) = (0.1, 0.3, 0)`.
pub fn cfb_profile() -> LossProfile {
    LossProfile::step(0.1, 0.3, 0.0).expect("valid step")
}

pub fn cfb_sequence_value(n: f64) -> Result<f64> {
    let h = 1.0 / n;
    let p = Cdf::uniform(-0.1 - h, 0.9 - h)?;
    Ok(lambda_var(&p, &cfb_profile())?.value.to_f64())
}

pub fn cfb_limit_value() -> Result<f64> {
    Ok(lambda_var(&Cdf::uniform(-0.1, 0.9)?, &cfb_profile())?.value.to_f64())
}

/// Richardson estimate of `lim_n ΛV@R(X_n)` from `n = 2^20` and `2^21`.
pub fn cfb_sequence_limit() -> Result<f64> {
    let n = (1u64 << 20) as f64;
    let a = cfb_sequence_value(n)?;
    let b = cfb_sequence_value(2.0 * n)?;
    Ok(2.0 * b - a)
}

/// Continuity-from-above fixture: `P = B` with the mass below `c` moved to
/// `c`, and `P_n` the same with `c + 1/n²`, so `P_n ↓ P`.
pub struct CfaFixture {
    pub profile: LossProfile,
    pub limit: Cdf,
    pub sequence: Vec<Cdf>,
}

pub fn random_cfa_fixture(rng: &mut impl Rng, len: usize) -> CfaFixture {
    let base = random_empirical(rng, 20);
    let (a, b) = base.support();
    // Half-grid offsets keep c + 1/n² clear of grid breakpoints for large n.
    let lo = (a * 64.0) as i32;
    let hi = ((b * 64.0) as i32).max(lo);
    let c = rng.gen_range(lo..=hi) as f64 / 64.0 + 1.0 / 128.0;
    let truncate = |at: f64| Cdf::new(base.func().truncate_below(at, 0.0)).expect("valid CDF");
    CfaFixture {
        profile: random_step_profile(rng),
        limit: truncate(c),
        sequence: (1..=len)
            .map(|n| truncate(c + 1.0 / (n * n) as f64))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    pub max_residual: f64,
    /// Named scalar results specific to a suite.
    pub metrics: Vec<(String, f64)>,
}

#[derive(Default)]
struct Tally {
    trials: usize,
    violations: usize,
    max_residual: f64,
}

impl Tally {
    fn record(&mut self, ok: bool, residual: f64) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
        }
        if residual > self.max_residual {
            self.max_residual = residual;
        }
    }
}

fn gap(a: ExtendedReal, b: ExtendedReal) -> f64 {
    match (a, b) {
        (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => (x - y).abs(),
        (a, b) if a == b => 0.0,
        _ => f64::INFINITY,
    }
}

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = rng(seed);
    let mut t = Tally::default();
    let mut metrics = Vec::new();
    match name {
        "mon" => {
            for _ in 0..trials {
                let (p, q) = random_dominated_pair(&mut r, 20);
                let l = random_increasing_profile(&mut r);
                let vp = lambda_var(&p, &l)?.value;
                let vq = lambda_var(&q, &l)?.value;
                let excess = match (vp, vq) {
                    (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).max(0.0),
                    _ => 0.0,
                };
                t.record(vq >= vp, excess);
            }
        }
        "qco" => {
            for _ in 0..trials {
                let p = random_empirical(&mut r, 20);
                let q = random_empirical(&mut r, 20);
                let w = random_weight(&mut r);
                let l = random_increasing_profile(&mut r);
                let vm = lambda_var(&mixture(&p, &q, w)?, &l)?.value;
                let bound = lambda_var(&p, &l)?.value.max(lambda_var(&q, &l)?.value);
                let excess = match (vm, bound) {
                    (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).max(0.0),
                    _ => 0.0,
                };
                t.record(vm <= bound, excess);
            }
        }
        "translation" => {
            for _ in 0..trials {
                let p = random_empirical(&mut r, 20);
                let l = random_increasing_profile(&mut r);
                let alpha = grid_point(&mut r) / 2.0;
                let (lhs, rhs) = crate::risk::translation_identity_check(&p, &l, alpha)?;
                t.record(lhs == rhs, gap(lhs, rhs));
            }
        }
        "reductions" => {
            for _ in 0..trials {
                let p = random_empirical(&mut r, 20);
                let lambda = grid_level(&mut r, 1, 255);
                let a = lambda_var(&p, &LossProfile::constant(lambda)?)?.value;
                let b = ExtendedReal::Finite(var(&p, lambda)?);
                t.record(a == b, gap(a, b));
                let a = lambda_var(&p, &LossProfile::constant(0.0)?)?.value;
                let b = worst_case(&p);
                t.record(a == b, gap(a, b));
            }
        }
        "cfa" => {
            for _ in 0..trials {
                let fx = random_cfa_fixture(&mut r, 50);
                let target = lambda_var(&fx.limit, &fx.profile)?.value.to_f64();
                let values: Vec<f64> = fx
                    .sequence
                    .iter()
                    .map(|q| Ok(lambda_var(q, &fx.profile)?.value.to_f64()))
                    .collect::<Result<_>>()?;
                let monotone = values.windows(2).all(|w| w[0] <= w[1]);
                let residual = (values[values.len() - 1] - target).abs();
                t.record(monotone && residual < 1e-3, residual);
            }
        }
        "cfb-counterexample" => {
            let limit_of_values = cfb_sequence_limit()?;
            let value_of_limit = cfb_limit_value()?;
            let jump = (limit_of_values - value_of_limit).abs();
            let residual = (jump - 0.2).abs();
            t.record(residual <= 1e-12, residual);
            metrics.push(("limit_of_values".to_string(), limit_of_values));
            metrics.push(("value_of_limit".to_string(), value_of_limit));
            metrics.push(("discontinuity".to_string(), jump));
            metrics.push(("lambda_max_minus_lambda_min".to_string(), 0.3 - 0.1));
        }
        "duality-sandwich" => {
            for _ in 0..trials {
                let p = random_empirical(&mut r, 20);
                let l = random_increasing_profile(&mut r);
                let f = random_test_function(&mut r);
                let phi = lambda_var(&p, &l)?.value;
                let s = f.integrate(&p);
                let s = s - DUAL_SLACK * (1.0 + s.abs());
                let extra: Vec<f64> = l.func().xs().collect();
                let (lo, hi) = gamma_bracket(&f, &extra);
                let risk = RiskMeasure::LambdaVar(l.clone());
                let bound = match r_minus_from_gamma(s, |m| risk.gamma(m, &f), lo, hi, 1e-9) {
                    Ok(b) => b,
                    Err(Error::Bracket(_)) => ExtendedReal::Finite(f64::MIN),
                    Err(e) => return Err(e),
                };
                let excess = match (bound, phi) {
                    (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).max(0.0),
                    (ExtendedReal::PlusInfinity, ExtendedReal::Finite(_)) => f64::INFINITY,
                    _ => 0.0,
                };
                t.record(bound <= phi, excess);

                let m = -grid_point(&mut r);
                let closed = gamma_lambda(m, &f, &l)?;
                let cands = truncation_candidates(&l, m, 50)?;
                let brute = gamma_bruteforce(m, &f, |q| Ok(lambda_var(q, &l)?.value), &cands)?;
                t.record(brute <= closed + 1e-12, (brute - closed).max(0.0));
            }
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        trials: t.trials,
        violations: t.violations,
        max_residual: t.max_residual,
        metrics,
    })
}
