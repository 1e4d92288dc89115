//! Critical exponents of the power-law ansatz.
//!
//! Substituting `u = A r^-γ`, `v = B r^-ξ` into the system forces the two
//! power-matching identities
//!
//! ```text
//!     δ ξ = (p-1) γ + p + a,        μ γ = (q-1) ξ + q + b,
//! ```
//!
//! whose solution (whenever `D = δμ - (p-1)(q-1) != 0`) is
//!
//! ```text
//!     γ_ab = ((p+a)(q-1) + (q+b) δ) / D,
//!     ξ_ab = ((q+b)(p-1) + (p+a) μ) / D.
//! ```
//!
//! The harmonic exponents `(N-p)/(p-1)` and `(N-q)/(q-1)` are the decay rates
//! of the fundamental solutions of the p- and q-Laplacian; comparisons of
//! `γ_ab`, `ξ_ab` against them decide which singular behaviors are possible.

use serde::Serialize;

use crate::params::SystemParams;

/// The derived exponents of a parameter set.  `big_d` may be zero or
/// negative, in which case `gamma_ab`/`xi_ab` are infinite or negative; the
/// classification layer flags this rather than erroring here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentSet {
    /// Coupling determinant `D = delta*mu - (p-1)(q-1)`.
    pub big_d: f64,
    /// Decay exponent of `u` in the power-law ansatz, with weights.
    pub gamma_ab: f64,
    /// Decay exponent of `v` in the power-law ansatz, with weights.
    pub xi_ab: f64,
    /// `gamma_ab` specialized to `a = b = 0`.
    pub gamma0: f64,
    /// `xi_ab` specialized to `a = b = 0`.
    pub xi0: f64,
    /// Harmonic threshold `(N-p)/(p-1)` for the `u`-component.
    pub harmonic_p: f64,
    /// Harmonic threshold `(N-q)/(q-1)` for the `v`-component.
    pub harmonic_q: f64,
}

/// Evaluate the closed-form exponents for a validated parameter set.
pub fn compute_exponents(params: &SystemParams) -> ExponentSet {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());

    let big_d = delta * mu - (p - 1.0) * (q - 1.0);
    let gamma = |a: f64, b: f64| ((p + a) * (q - 1.0) + (q + b) * delta) / big_d;
    let xi = |a: f64, b: f64| ((q + b) * (p - 1.0) + (p + a) * mu) / big_d;

    ExponentSet {
        big_d,
        gamma_ab: gamma(a, b),
        xi_ab: xi(a, b),
        gamma0: gamma(0.0, 0.0),
        xi0: xi(0.0, 0.0),
        harmonic_p: (n - p) / (p - 1.0),
        harmonic_q: (n - q) / (q - 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SystemKind;
    use approx::assert_relative_eq;

    fn params(n: u32, p: f64, q: f64, delta: f64, mu: f64, a: f64, b: f64) -> SystemParams {
        SystemParams::new(n, p, q, delta, mu, a, b, SystemKind::Absorption).expect("valid")
    }

    #[test]
    fn symmetric_cubic_case() {
        let e = compute_exponents(&params(3, 2.0, 2.0, 3.0, 3.0, 0.0, 0.0));
        assert_eq!(e.big_d, 8.0);
        assert_eq!(e.gamma_ab, 1.0);
        assert_eq!(e.xi_ab, 1.0);
        assert_eq!(e.harmonic_p, 1.0);
        assert_eq!(e.harmonic_q, 1.0);
    }

    #[test]
    fn asymmetric_case_and_identity() {
        let p = params(4, 2.0, 3.0, 2.0, 4.0, 0.0, 0.0);
        let e = compute_exponents(&p);
        assert_eq!(e.big_d, 6.0);
        assert_relative_eq!(e.gamma_ab, 5.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(e.xi_ab, 11.0 / 6.0, max_relative = 1e-15);
        // delta*xi = (p-1)*gamma + p + a, both sides 11/3 here.
        assert_relative_eq!(
            p.delta() * e.xi_ab,
            (p.p() - 1.0) * e.gamma_ab + p.p() + p.a(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn weighted_case() {
        let e = compute_exponents(&params(3, 2.0, 2.0, 2.0, 2.0, 1.0, 0.0));
        assert_eq!(e.big_d, 3.0);
        assert_relative_eq!(e.gamma_ab, 7.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(e.xi_ab, 8.0 / 3.0, max_relative = 1e-15);
        // With weights: delta*xi_ab = (p-1)*gamma_ab + p + a = 16/3.
        assert_relative_eq!(2.0 * e.xi_ab, e.gamma_ab + 3.0, max_relative = 1e-14);
        // The unweighted pair is the a = b = 0 specialization.
        assert_eq!(e.gamma0, 2.0);
        assert_eq!(e.xi0, 2.0);
    }
}
