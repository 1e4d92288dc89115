//! Shared parameter builders for the integration tests.
//!
//! Each test target compiles this module separately and uses a subset
//! of the helpers; the eight-argument builder mirrors the parameter
//! constructor it wraps.
#![allow(dead_code, clippy::too_many_arguments)]

use pqlab_exponents::{SystemKind, SystemParams};
use pqlab_radial::ScalarParams;

/// The reference system used throughout: `N = 3`, `p = q = 2`,
/// `delta = mu = 2`, unweighted.
pub fn reference(kind: SystemKind) -> SystemParams {
    SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, kind).expect("valid reference parameters")
}

/// General system builder that panics on invalid input.
#[allow(dead_code)]
pub fn system(
    n: u32,
    p: f64,
    q: f64,
    delta: f64,
    mu: f64,
    a: f64,
    b: f64,
    kind: SystemKind,
) -> SystemParams {
    SystemParams::new(n, p, q, delta, mu, a, b, kind).expect("valid system parameters")
}

/// Scalar builder that panics on invalid input.
#[allow(dead_code)]
pub fn scalar(n: u32, p: f64, big_q: f64, c: f64, sigma: f64) -> ScalarParams {
    ScalarParams::new(n, p, big_q, c, sigma).expect("valid scalar parameters")
}
