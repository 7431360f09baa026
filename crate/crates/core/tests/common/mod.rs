#![allow(dead_code)]

use lvar_core::suites::{
    random_decreasing_profile, random_increasing_profile, random_test_function, rng,
};
use lvar_core::{Cdf, LossProfile, TestFunction};
use proptest::prelude::*;

/// Grid samples `k/64` in `[-10, 10]`.
pub fn samples(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-640i32..=640).prop_map(|k| k as f64 / 64.0), 1..=max)
}

pub fn empirical() -> impl Strategy<Value = Cdf> {
    samples(20).prop_map(|xs| Cdf::from_samples(&xs).unwrap())
}

/// Empirical or empirical mixed with a uniform block.
pub fn distribution() -> impl Strategy<Value = Cdf> {
    (
        samples(12),
        -640i32..=640,
        1i32..=256,
        prop::option::of(1u32..64),
    )
        .prop_map(|(xs, a, w, mix)| {
            let p = Cdf::from_samples(&xs).unwrap();
            match mix {
                None => p,
                Some(k) => {
                    let a = a as f64 / 64.0;
                    let u = Cdf::uniform(a, a + w as f64 / 64.0).unwrap();
                    lvar_core::mixture(&p, &u, k as f64 / 64.0).unwrap()
                }
            }
        })
}

pub fn dyadic(lo: i32, hi: i32) -> impl Strategy<Value = f64> {
    (lo..=hi).prop_map(|k| k as f64 / 64.0)
}

pub fn weight() -> impl Strategy<Value = f64> {
    (0u32..=64).prop_map(|k| k as f64 / 64.0)
}

pub fn increasing_profile() -> impl Strategy<Value = LossProfile> {
    any::<u64>().prop_map(|s| random_increasing_profile(&mut rng(s)))
}

pub fn decreasing_profile() -> impl Strategy<Value = LossProfile> {
    any::<u64>().prop_map(|s| random_decreasing_profile(&mut rng(s)))
}

pub fn test_function() -> impl Strategy<Value = TestFunction> {
    any::<u64>().prop_map(|s| random_test_function(&mut rng(s)))
}
