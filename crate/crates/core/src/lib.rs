//! Law-invariant quasi-convex risk measures on distribution functions.
//!
//! Distributions, loss profiles and test functions are right-continuous
//! piecewise-linear functions with jumps. On this class ΛV@R, V@R, the
//! worst-case measure, acceptance families and the dual quantities `γ` and
//! `R⁻` are computed from breakpoint data; bisection and brute-force routes
//! are kept as cross-checks.

pub mod distribution;
pub mod duality;
mod error;
mod extended;
pub mod piecewise;
pub mod profile;
pub mod risk;
pub mod stieltjes;
pub mod suites;

pub use distribution::{converges_weakly, dominates, mixture, Cdf, MonotoneRC, Orientation};
pub use duality::{
    conjugate_divergence_witness, gamma_bruteforce, gamma_decreasing, gamma_family, gamma_lambda,
    left_inverse, r_direct, r_minus, r_minus_from_gamma, representation_bound, DualBoundReport,
    TestFunction,
};
pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use piecewise::{Breakpoint, PiecewiseLinear};
pub use profile::{
    acceptance_contains, family_member, family_member_tilde, AcceptanceFamily, FamilyTable,
    Interpolation, LossProfile, ProfileShape,
};
pub use risk::{
    certainty_equivalent, entropic, lambda_var, lambda_var_tilde, phi_from_family,
    translation_identity_check, var, worst_case, FinitenessCase, RiskMeasure, RiskReport,
    SearchBracket,
};
pub use stieltjes::{stieltjes, Affine, ExpUtility, Integrand};
