//! Acceptance checks. Each check prints one PASS/FAIL line with its measured
//! residual and wall time; the process exits nonzero if any check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use lvar_core::duality::{
    adaptive_ladder_bound, gamma_bracket, truncation_candidates, uniform_ladder,
};
use lvar_core::suites::{
    cfb_limit_value, cfb_sequence_limit, cfb_sequence_value, grid_level, grid_point,
    random_cfa_fixture, random_decreasing_profile, random_dominated_pair, random_empirical,
    random_increasing_profile, random_samples, random_test_function, random_weight, rng,
};
use lvar_core::{
    conjugate_divergence_witness, gamma_bruteforce, gamma_family, gamma_lambda,
    lambda_var, lambda_var_tilde, mixture, phi_from_family, r_minus, r_minus_from_gamma,
    representation_bound, translation_identity_check, var, worst_case, AcceptanceFamily, Cdf,
    ExtendedReal, LossProfile, RiskMeasure, TestFunction,
};

const ORACLE_TOL: f64 = 1e-9;
const GAMMA_TOL: f64 = 1e-12;
const TRUNCATION_TOL: f64 = 1e-3;
const R_MINUS_TOL: f64 = 1e-9;
const R_BISECTION_TOL: f64 = 1e-6;
const LADDER_GAP: f64 = 0.05;
const CFB_TOL: f64 = 1e-12;
const CFA_RESIDUAL: f64 = 1e-3;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass_if(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// `q⁺(λ)` of the empirical distribution of `xs`: the sorted sample at
/// index `⌊nλ⌋`.
fn quantile_oracle(xs: &[f64], lambda: f64) -> f64 {
    let mut s = xs.to_vec();
    s.sort_by(f64::total_cmp);
    s[(s.len() as f64 * lambda).floor() as usize]
}

/// `sup{x : f(x) >= y}` by bisection on point values.
fn left_inverse_oracle(f: &TestFunction, y: f64) -> f64 {
    let xs: Vec<f64> = f.func().xs().collect();
    let mut lo = xs[0] - 1.0;
    let mut hi = xs[xs.len() - 1] + 1.0;
    assert!(f.eval(lo) >= y && f.eval(hi) < y);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f.eval(mid) >= y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn reductions() -> Outcome {
    let mut r = rng(1);
    let mut bad = 0;
    for _ in 0..1000 {
        let xs = random_samples(&mut r, 20);
        let p = Cdf::from_samples(&xs).unwrap();
        let lambda = grid_level(&mut r, 1, 255);
        let lv = lambda_var(&p, &LossProfile::constant(lambda).unwrap()).unwrap().value;
        let v = var(&p, lambda).unwrap();
        if lv != ExtendedReal::Finite(v) || v != -quantile_oracle(&xs, lambda) {
            bad += 1;
        }
        let lw = lambda_var(&p, &LossProfile::constant(0.0).unwrap()).unwrap().value;
        let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
        if lw != worst_case(&p) || lw != ExtendedReal::Finite(-min) {
            bad += 1;
        }
    }
    pass_if(bad == 0, format!("2000 identities, {bad} mismatches, tolerance 0"))
}

fn step_case_formula() -> Outcome {
    let mut r = rng(2);
    let mut bad = 0;
    for _ in 0..1000 {
        let xs = random_samples(&mut r, 20);
        let p = Cdf::from_samples(&xs).unwrap();
        let mut l = [grid_level(&mut r, 1, 255), grid_level(&mut r, 1, 255)];
        l.sort_by(f64::total_cmp);
        let xbar = grid_point(&mut r);
        let profile = LossProfile::step(l[0], l[1], xbar).unwrap();
        let v_min = -quantile_oracle(&xs, l[0]);
        let v_max = -quantile_oracle(&xs, l[1]);
        let expected = if v_min <= -xbar { v_max } else { v_min };
        if lambda_var(&p, &profile).unwrap().value != ExtendedReal::Finite(expected) {
            bad += 1;
        }
    }
    pass_if(bad == 0, format!("1000 cases, {bad} mismatches, tolerance 0"))
}

fn translation_identity() -> Outcome {
    let mut r = rng(3);
    let mut bad = 0;
    for _ in 0..1000 {
        let p = random_empirical(&mut r, 20);
        let profile = random_increasing_profile(&mut r);
        let alpha = grid_point(&mut r) / 2.0;
        let (lhs, rhs) = translation_identity_check(&p, &profile, alpha).unwrap();
        if lhs != rhs {
            bad += 1;
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let p = random_empirical(&mut r, 20);
        let profile = random_decreasing_profile(&mut r);
        let alpha = grid_point(&mut r) / 2.0;
        let (lhs, rhs) = translation_identity_check(&p, &profile, alpha).unwrap();
        worst = worst.max((lhs.to_f64() - rhs.to_f64()).abs());
    }
    pass_if(
        bad == 0 && worst <= 1e-12,
        format!(
            "1000 exact cases, {bad} mismatches; 200 decreasing-profile cases, max residual {worst:.1e} (limit 1e-12)"
        ),
    )
}

fn monotonicity_and_quasiconvexity() -> Outcome {
    let mut r = rng(4);
    let mut mon = 0;
    let mut qco = 0;
    for _ in 0..1000 {
        let (p, q) = random_dominated_pair(&mut r, 20);
        let profile = random_increasing_profile(&mut r);
        if lambda_var(&q, &profile).unwrap().value < lambda_var(&p, &profile).unwrap().value {
            mon += 1;
        }
    }
    for _ in 0..1000 {
        let p = random_empirical(&mut r, 20);
        let q = random_empirical(&mut r, 20);
        let w = random_weight(&mut r);
        let profile = random_increasing_profile(&mut r);
        let vm = lambda_var(&mixture(&p, &q, w).unwrap(), &profile).unwrap().value;
        let vp = lambda_var(&p, &profile).unwrap().value;
        let vq = lambda_var(&q, &profile).unwrap().value;
        if vm > vp.max(vq) {
            qco += 1;
        }
    }
    pass_if(
        mon == 0 && qco == 0,
        format!("1000 dominated pairs, {mon} violations; 1000 mixtures, {qco} violations"),
    )
}

fn oracle_agreement() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let mut p = random_empirical(&mut r, 20);
        if i % 2 == 1 {
            let a = grid_point(&mut r);
            let u = Cdf::uniform(a, a + 0.5 + r.gen::<f64>() * 4.0).unwrap();
            p = mixture(&p, &u, r.gen()).unwrap();
        }
        let profile = random_increasing_profile(&mut r);
        let exact = lambda_var(&p, &profile).unwrap().value.to_f64();
        let fam = AcceptanceFamily::FromProfile(profile);
        let bis = phi_from_family(&p, &fam, None).unwrap().to_f64();
        worst = worst.max((exact - bis).abs());
    }
    pass_if(
        worst <= ORACLE_TOL,
        format!("1000 cases, max |bisection - exact| = {worst:.2e} (limit {ORACLE_TOL:e})"),
    )
}

fn decreasing_equivalence() -> Outcome {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let mut p = random_empirical(&mut r, 20);
        if i % 2 == 1 {
            let a = grid_point(&mut r);
            p = mixture(&p, &Cdf::uniform(a, a + 2.0).unwrap(), 0.5).unwrap();
        }
        let profile = random_decreasing_profile(&mut r);
        let a = lambda_var(&p, &profile).unwrap().value.to_f64();
        let b = lambda_var_tilde(&p, &profile).unwrap().value.to_f64();
        let fam = AcceptanceFamily::tilde(profile).unwrap();
        let c = phi_from_family(&p, &fam, None).unwrap().to_f64();
        worst = worst.max((a - b).abs()).max((a - c).abs());
    }
    pass_if(
        worst <= ORACLE_TOL,
        format!("500 decreasing profiles, max residual {worst:.2e} (limit {ORACLE_TOL:e})"),
    )
}

fn gamma_triangle() -> Outcome {
    let mut r = rng(7);
    let mut closed: f64 = 0.0;
    let mut trunc: f64 = 0.0;
    let mut above = 0;
    for _ in 0..1000 {
        let profile = random_increasing_profile(&mut r);
        let f = random_test_function(&mut r);
        let m = -grid_point(&mut r) + r.gen::<f64>() - 0.5;
        let a = gamma_lambda(m, &f, &profile).unwrap();
        let fam = AcceptanceFamily::FromProfile(profile.clone());
        let b = gamma_family(m, &f, &fam).unwrap();
        closed = closed.max((a - b).abs());
        let cands = truncation_candidates(&profile, m, 50).unwrap();
        let brute =
            gamma_bruteforce(m, &f, |q| Ok(lambda_var(q, &profile)?.value), &cands).unwrap();
        if brute > a + GAMMA_TOL {
            above += 1;
        }
        trunc = trunc.max(a - brute);
    }
    pass_if(
        closed <= GAMMA_TOL && trunc < TRUNCATION_TOL && above == 0,
        format!(
            "1000 cases, closed forms differ by {closed:.1e} (limit {GAMMA_TOL:e}), truncation gap {trunc:.1e} (limit {TRUNCATION_TOL:e}), {above} brute-force values above the closed form"
        ),
    )
}

fn r_minus_closed_forms() -> Outcome {
    let mut r = rng(8);
    let mut special: f64 = 0.0;
    let mut bisect: f64 = 0.0;
    for _ in 0..1000 {
        let f = random_test_function(&mut r);
        let (top, bottom) = (f.limit_left(), f.limit_right());
        let z = bottom + (top - bottom) * (1.0 - r.gen::<f64>());

        let worst = LossProfile::constant(0.0).unwrap();
        let got = r_minus(z, &f, &worst).unwrap().to_f64();
        special = special.max((got + left_inverse_oracle(&f, z)).abs());

        let lambda = grid_level(&mut r, 0, 255);
        let t = lambda * top + (1.0 - lambda) * z;
        let c = LossProfile::constant(lambda).unwrap();
        let got = r_minus(t, &f, &c).unwrap().to_f64();
        let level = (t - lambda * top) / (1.0 - lambda);
        special = special.max((got + left_inverse_oracle(&f, level)).abs());

        let profile = random_increasing_profile(&mut r);
        let extra: Vec<f64> = profile.func().xs().collect();
        let (lo, hi) = gamma_bracket(&f, &extra);
        let g_lo = gamma_lambda(lo, &f, &profile).unwrap();
        let t = g_lo + (top - g_lo) * (1.0 - r.gen::<f64>());
        let closed = r_minus(t, &f, &profile).unwrap().to_f64();
        let bis = r_minus_from_gamma(t, |m| gamma_lambda(m, &f, &profile), lo, hi, 1e-9)
            .unwrap()
            .to_f64();
        bisect = bisect.max((closed - bis).abs());
    }
    pass_if(
        special <= R_MINUS_TOL && bisect <= R_BISECTION_TOL,
        format!(
            "1000 cases, special forms {special:.1e} (limit {R_MINUS_TOL:e}), bisection vs closed form {bisect:.1e} (limit {R_BISECTION_TOL:e})"
        ),
    )
}

fn ten_atoms(r: &mut impl Rng) -> Cdf {
    let mut xs: Vec<f64> = Vec::new();
    while xs.len() < 10 {
        let x = grid_point(r);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    Cdf::from_samples(&xs).unwrap()
}

fn weak_duality_and_gap() -> Outcome {
    let mut r = rng(9);
    let mut violations = 0;
    for i in 0..1000 {
        let p = random_empirical(&mut r, 20);
        let risk = match i % 3 {
            0 => RiskMeasure::LambdaVar(random_increasing_profile(&mut r)),
            1 => RiskMeasure::Var(grid_level(&mut r, 1, 255)),
            _ => RiskMeasure::WorstCase,
        };
        let mut fs: Vec<TestFunction> = (0..3).map(|_| random_test_function(&mut r)).collect();
        let c = grid_point(&mut r);
        fs.extend(uniform_ladder(c - 0.5, c + 0.5, 3, 0.01).unwrap());
        let rep = representation_bound(&p, &risk, &fs, 1e-9).unwrap();
        if ExtendedReal::Finite(rep.best_lower_bound) > rep.phi_value {
            violations += 1;
        }
    }
    let mut worst_gap: f64 = 0.0;
    for _ in 0..20 {
        let p = ten_atoms(&mut r);
        let (_, rep) = adaptive_ladder_bound(&p, &RiskMeasure::Var(0.25), 200, 0.01, 1e-9).unwrap();
        if ExtendedReal::Finite(rep.best_lower_bound) > rep.phi_value {
            violations += 1;
        }
        worst_gap = worst_gap.max(rep.gap.to_f64());
    }
    pass_if(
        violations == 0 && worst_gap < LADDER_GAP,
        format!(
            "1020 bounds, {violations} above the risk value; 200-function ladder gap {worst_gap:.4} on 20 ten-atom cases (limit {LADDER_GAP})"
        ),
    )
}

fn continuity_from_below_fails() -> Outcome {
    let profile_jump = 0.3 - 0.1;
    let seq_ok = [10.0, 100.0, 1000.0]
        .iter()
        .all(|&n| (cfb_sequence_value(n).unwrap() - 1.0 / n).abs() <= CFB_TOL);
    let lim = cfb_sequence_limit().unwrap();
    let at_limit = cfb_limit_value().unwrap();
    let jump = (lim - at_limit).abs();
    pass_if(
        seq_ok && (jump - profile_jump).abs() <= CFB_TOL && (at_limit + 0.2).abs() <= CFB_TOL,
        format!(
            "values 1/n along the sequence, limit {lim:.1e}, value at the limit {at_limit}, discontinuity {jump} (expected {profile_jump}, tolerance {CFB_TOL:e})"
        ),
    )
}

fn conjugate_divergence() -> Outcome {
    let f = TestFunction::from_cdf_negated(&Cdf::uniform(0.0, 1.0).unwrap()).unwrap();
    let measures = [
        RiskMeasure::Entropic,
        RiskMeasure::Var(0.5),
        RiskMeasure::WorstCase,
    ];
    let mut witnesses = Vec::new();
    for m in &measures {
        witnesses.push(conjugate_divergence_witness(|q| m.evaluate(q), &f, 100).unwrap());
    }
    pass_if(
        witnesses.iter().all(|&w| w > 50.0),
        format!("witnesses at N = 100: {witnesses:?} (threshold 50)"),
    )
}

fn continuity_from_above() -> Outcome {
    let mut r = rng(12);
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let fx = random_cfa_fixture(&mut r, 50);
        let target = lambda_var(&fx.limit, &fx.profile).unwrap().value.to_f64();
        let values: Vec<f64> = fx
            .sequence
            .iter()
            .map(|q| lambda_var(q, &fx.profile).unwrap().value.to_f64())
            .collect();
        let residual = (values[49] - target).abs();
        worst = worst.max(residual);
        if values.windows(2).any(|w| w[0] > w[1]) || residual >= CFA_RESIDUAL || values[49] > target
        {
            bad += 1;
        }
    }
    pass_if(
        bad == 0,
        format!("100 sequences, {bad} failures, terminal residual {worst:.1e} (limit {CFA_RESIDUAL:e})"),
    )
}

type Check = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let checks: [Check; 12] = [
        ("reduction identities", reductions, Duration::from_secs(5)),
        ("step profile case formula", step_case_formula, Duration::from_secs(5)),
        ("translation identity", translation_identity, Duration::from_secs(5)),
        ("monotonicity and quasiconvexity", monotonicity_and_quasiconvexity, Duration::from_secs(10)),
        ("family bisection agrees with exact scan", oracle_agreement, Duration::from_secs(30)),
        ("decreasing profile equivalence", decreasing_equivalence, Duration::from_secs(10)),
        ("dual function closed forms", gamma_triangle, Duration::from_secs(30)),
        ("lower representation closed forms", r_minus_closed_forms, Duration::from_secs(30)),
        ("weak duality and ladder gap", weak_duality_and_gap, Duration::from_secs(60)),
        ("continuity from below fails", continuity_from_below_fails, Duration::from_secs(1)),
        ("conjugate divergence", conjugate_divergence, Duration::from_secs(1)),
        ("continuity from above", continuity_from_above, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in checks.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let ok = out.ok && took <= *limit;
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} acceptance checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
