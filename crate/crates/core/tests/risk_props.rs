mod common;

use common::{distribution, dyadic, empirical, increasing_profile, weight};
use lvar_core::{
    certainty_equivalent, entropic, lambda_var, mixture, phi_from_family, var, worst_case,
    AcceptanceFamily, Cdf, ExpUtility, LossProfile,
};
use proptest::prelude::*;

fn value(p: &Cdf, l: &LossProfile) -> f64 {
    lambda_var(p, l).unwrap().value.to_f64()
}

/// First point of the 1/128 grid on `[-12, 12]` where `F_P > Λ`.
fn grid_oracle(p: &Cdf, l: &LossProfile) -> f64 {
    (0..=(24 * 128))
        .map(|i| -12.0 + i as f64 / 128.0)
        .find(|&x| p.eval(x) > l.eval(x))
        .expect("F_P reaches 1 > sup Λ on the grid")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_scan_matches_grid_scan(p in empirical(), l in increasing_profile()) {
        prop_assert_eq!(value(&p, &l), -grid_oracle(&p, &l));
    }

    #[test]
    fn monotone_under_dominance(p in distribution(), l in increasing_profile(), s in dyadic(0, 128)) {
        let worse = p.translate(-s);
        prop_assert!(value(&worse, &l) >= value(&p, &l) - 1e-12);
    }

    #[test]
    fn quasiconvex_under_mixing(p in distribution(), q in distribution(), w in weight(), l in increasing_profile()) {
        let vm = value(&mixture(&p, &q, w).unwrap(), &l);
        prop_assert!(vm <= value(&p, &l).max(value(&q, &l)) + 1e-12);
    }

    #[test]
    fn more_prudent_profiles_charge_more(p in distribution(), l in increasing_profile(), theta in 0.0f64..0.9, a in dyadic(0, 256)) {
        let raised = LossProfile::from_function(l.func().map_values(|v| v + (1.0 - v) * theta)).unwrap();
        prop_assert!(value(&p, &l) >= value(&p, &raised));
        prop_assert!(value(&p, &l) >= value(&p, &l.shift(a)));
    }

    #[test]
    fn constant_profiles_reduce_exactly(p in distribution(), k in 1u32..256) {
        let lambda = k as f64 / 256.0;
        prop_assert_eq!(value(&p, &LossProfile::constant(lambda).unwrap()), var(&p, lambda).unwrap());
        prop_assert_eq!(
            lambda_var(&p, &LossProfile::constant(0.0).unwrap()).unwrap().value,
            worst_case(&p)
        );
    }

    #[test]
    fn entropic_is_cash_additive(p in distribution(), m in -10.0f64..10.0) {
        prop_assert!((entropic(&p.translate(m)) - (entropic(&p) - m)).abs() <= 1e-12);
    }

    #[test]
    fn certainty_equivalent_is_monotone(p in distribution(), s in dyadic(0, 128), rate in 0.1f64..2.0) {
        let u = ExpUtility::new(rate);
        let worse = p.translate(-s);
        prop_assert!(certainty_equivalent(&worse, &u).unwrap() >= certainty_equivalent(&p, &u).unwrap() - 1e-11);
    }

    #[test]
    fn exponential_certainty_equivalent_is_entropic(p in distribution()) {
        let ce = certainty_equivalent(&p, &ExpUtility::new(1.0)).unwrap();
        prop_assert!((ce - entropic(&p)).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bisection_agrees_with_scan(p in distribution(), l in increasing_profile()) {
        let fam = AcceptanceFamily::FromProfile(l.clone());
        let bis = phi_from_family(&p, &fam, None).unwrap().to_f64();
        prop_assert!((bis - value(&p, &l)).abs() <= 1e-9);
    }
}

#[test]
fn step_profile_grid_oracle() {
    let p = Cdf::uniform(-0.1, 0.9).unwrap();
    let l = LossProfile::step(0.1, 0.3, 0.0).unwrap();
    let h = 1e-6;
    let first = (0..2_000_000)
        .map(|i| -1.0 + i as f64 * h)
        .find(|&x| p.eval(x) > l.eval(x))
        .unwrap();
    assert!((value(&p, &l) + first).abs() <= h);
    assert!((value(&p, &l) + 0.2).abs() <= 1e-15);
}

#[test]
fn case_formula_on_the_uniform_fixture() {
    let p = Cdf::uniform(-0.1, 0.9).unwrap();
    for &(lo, hi, xbar) in &[(0.1, 0.3, 0.0), (0.1, 0.3, 0.5), (0.05, 0.6, -0.5)] {
        let l = LossProfile::step(lo, hi, xbar).unwrap();
        let v_lo = var(&p, lo).unwrap();
        let expected = if v_lo <= -xbar { var(&p, hi).unwrap() } else { v_lo };
        assert!((value(&p, &l) - expected).abs() <= 1e-15);
    }
}
