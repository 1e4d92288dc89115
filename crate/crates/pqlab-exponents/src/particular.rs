//! Amplitudes of the explicit power-law solution.
//!
//! Substituting `u = A r^-γ` into the radial p-Laplacian gives
//!
//! ```text
//!     Δ_p u = (A γ)^(p-1) ((γ+1)(p-1) - (N-1)) r^(-(γ+1)(p-1)-1),
//! ```
//!
//! and the factor `(γ+1)(p-1) - (N-1)` equals `(p-1)(γ - (N-p)/(p-1))`, so
//! its sign is decided by the supercritical flags.  Matching coefficients in
//! both equations yields a 2x2 *linear* system in `(ln A, ln B)`:
//!
//! ```text
//!     (p-1) ln A - δ ln B = -K₁,      K₁ = (p-1) ln γ + ln|(p-1)(γ - h_p)|,
//!     -μ ln A + (q-1) ln B = -K₂,     K₂ = (q-1) ln ξ + ln|(q-1)(ξ - h_q)|,
//! ```
//!
//! with determinant `(p-1)(q-1) - δμ = -D != 0`.  Solving in log space keeps
//! the arithmetic stable even for large powers like `δ = 12`.

use serde::Serialize;
use thiserror::Error;

use crate::exponents::ExponentSet;
use crate::params::{SystemKind, SystemParams};
use crate::regimes::classify_regimes;

/// Failure modes of [`particular_coefficients`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error(
        "no explicit power-law solution for kind `{kind}`: gamma_ab = {gamma_ab}, \
         xi_ab = {xi_ab} versus harmonic thresholds {harmonic_p}, {harmonic_q} \
         (absorption needs both above; mixed needs gamma above and xi below; \
         source admits none)"
    )]
    NoParticularSolution {
        kind: SystemKind,
        gamma_ab: f64,
        xi_ab: f64,
        harmonic_p: f64,
        harmonic_q: f64,
    },
    #[error(
        "power-law amplitudes leave double precision: ln A* = {ln_a_star}, \
         ln B* = {ln_b_star} (a coupling determinant D = {big_d} near zero \
         inflates the solution of the log-linear amplitude system)"
    )]
    AmplitudeOverflow {
        ln_a_star: f64,
        ln_b_star: f64,
        big_d: f64,
    },
}

/// Amplitude logs beyond this magnitude cannot be exponentiated in f64
/// (`exp` overflows past ~709.8); the solution exists on paper but its
/// profile values are unrepresentable.
const LN_AMPLITUDE_MAX: f64 = 700.0;

/// The explicit solution `u* = a_star * r^-gamma_ab`,
/// `v* = b_star * r^-xi_ab`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticularSolution {
    /// Amplitude `A*` of the `u`-component.
    pub a_star: f64,
    /// Amplitude `B*` of the `v`-component.
    pub b_star: f64,
    /// Decay exponent of the `u`-component (copied from [`ExponentSet`]).
    pub gamma_ab: f64,
    /// Decay exponent of the `v`-component (copied from [`ExponentSet`]).
    pub xi_ab: f64,
}

impl ParticularSolution {
    /// `u*(r) = A* r^-gamma_ab`.
    pub fn u(&self, r: f64) -> f64 {
        self.a_star * r.powf(-self.gamma_ab)
    }

    /// `v*(r) = B* r^-xi_ab`.
    pub fn v(&self, r: f64) -> f64 {
        self.b_star * r.powf(-self.xi_ab)
    }

    /// `d u*/dr`.
    pub fn du(&self, r: f64) -> f64 {
        -self.gamma_ab * self.a_star * r.powf(-self.gamma_ab - 1.0)
    }

    /// `d v*/dr`.
    pub fn dv(&self, r: f64) -> f64 {
        -self.xi_ab * self.b_star * r.powf(-self.xi_ab - 1.0)
    }
}

/// Solve the amplitude equations for the explicit power-law solution.
///
/// Fails with [`RegimeError::NoParticularSolution`] when the sign conditions
/// for the given kind do not hold (including the degenerate case where an
/// exponent ties its harmonic threshold, which would zero a coefficient),
/// and with [`RegimeError::AmplitudeOverflow`] when a near-zero coupling
/// determinant pushes the amplitudes outside double precision.
pub fn particular_coefficients(
    params: &SystemParams,
    exps: &ExponentSet,
) -> Result<ParticularSolution, RegimeError> {
    let flags = classify_regimes(params, exps);
    if !flags.particular_exists {
        return Err(RegimeError::NoParticularSolution {
            kind: params.kind(),
            gamma_ab: exps.gamma_ab,
            xi_ab: exps.xi_ab,
            harmonic_p: exps.harmonic_p,
            harmonic_q: exps.harmonic_q,
        });
    }

    let (p, q) = (params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (gamma, xi) = (exps.gamma_ab, exps.xi_ab);

    // Coefficient magnitudes; the sign conditions verified above guarantee
    // both arguments of ln are positive.
    let k1 = (p - 1.0) * gamma.ln() + ((p - 1.0) * (gamma - exps.harmonic_p)).ln();
    let k2 = (q - 1.0) * xi.ln() + ((q - 1.0) * (xi - exps.harmonic_q).abs()).ln();

    // Cramer's rule on the log-linear system; determinant is -D.
    let ln_a = ((q - 1.0) * k1 + delta * k2) / exps.big_d;
    let ln_b = (mu * k1 + (p - 1.0) * k2) / exps.big_d;

    if ln_a.abs() > LN_AMPLITUDE_MAX || ln_b.abs() > LN_AMPLITUDE_MAX {
        return Err(RegimeError::AmplitudeOverflow {
            ln_a_star: ln_a,
            ln_b_star: ln_b,
            big_d: exps.big_d,
        });
    }

    Ok(ParticularSolution {
        a_star: ln_a.exp(),
        b_star: ln_b.exp(),
        gamma_ab: gamma,
        xi_ab: xi,
    })
}
