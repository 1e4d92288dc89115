//! Shared parameter builders for the phase-plane integration tests.
//!
//! Each test target compiles this module separately and uses a subset
//! of the helpers.
#![allow(dead_code)]

use pqlab_exponents::{SystemKind, SystemParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The reference absorption system: N = 3, p = q = 2, delta = mu = 2.
/// Its particular solution has unit-free coefficients (both equal 2),
/// which makes round-trip failures easy to spot by eye.
pub fn reference_absorption() -> SystemParams {
    SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
        .expect("reference parameters are valid")
}

/// Same exponents with the mixed sign pattern (absorption in the first
/// equation, source in the second).
pub fn reference_mixed() -> SystemParams {
    SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Mixed)
        .expect("reference parameters are valid")
}

/// Absorption system with one subcritical coupling: N = 4, p = q = 2,
/// delta = 5, mu = 1/2.  Here mu falls below (q+b)(p-1)/(N-p), so the
/// harmonic-escape point carries a three-dimensional unstable manifold
/// and shots from it select profiles with a bounded first component.
pub fn subcritical_absorption() -> SystemParams {
    SystemParams::new(4, 2.0, 2.0, 5.0, 0.5, 0.0, 0.0, SystemKind::Absorption)
        .expect("subcritical parameters are valid")
}

/// Draw random parameters with moderate magnitudes.
///
/// The catalog tests assert an absolute gate on the vector field at each
/// fixed point, so draws are filtered to keep every cataloged coordinate
/// below 20 and every eigenvalue real part below 40 in magnitude; the
/// gate then measures cancellation quality rather than raw growth of the
/// inputs.  Couplings are kept away from the degenerate surface
/// delta * mu = (p-1)(q-1).
pub fn random_moderate_params(rng: &mut ChaCha8Rng) -> SystemParams {
    loop {
        let n_dim = rng.random_range(3..=5u32);
        let p = rng.random_range(1.4..2.6);
        let q = rng.random_range(1.4..2.6);
        let delta = rng.random_range(0.5..3.0);
        let mu = rng.random_range(0.5..3.0);
        if delta * mu - (p - 1.0) * (q - 1.0) < 0.5 {
            continue;
        }
        let a = rng.random_range(-0.25..0.75);
        let b = rng.random_range(-0.25..0.75);
        let kind = match rng.random_range(0..3u8) {
            0 => SystemKind::Absorption,
            1 => SystemKind::Mixed,
            _ => SystemKind::Source,
        };
        let Ok(params) = SystemParams::new(n_dim, p, q, delta, mu, a, b, kind) else {
            continue;
        };
        let Ok(catalog) = pqlab_phase::fixed_point_catalog(&params) else {
            continue;
        };
        let moderate = catalog.iter().all(|fp| {
            fp.coords.iter().all(|c| c.abs() <= 20.0)
                && fp.eigenvalues.iter().all(|l| l.re.abs() <= 40.0)
        });
        if moderate {
            return params;
        }
    }
}
