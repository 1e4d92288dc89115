//! Empirical bootstrap certificates for self-improving inequalities.
//!
//! The pattern: a nonnegative quantity y(rho) satisfies a recurrence
//!
//! ```text
//! y(rho) <= K eps^(-h) Phi(rho) y(rho (1 + eps))^d        (0 < d < 1)
//! ```
//!
//! for every eps in (0, eps0], with Phi quasi-monotone
//! (sup over [rho, 3 rho / 2] of Phi <= M Phi(rho)).  Iterating the
//! recurrence along radii rho_k = rho * prod (1 + eps0 / 2^j) and
//! absorbing the geometric exponent sums yields the closed bound
//!
//! ```text
//! y(rho) <= C Phi(rho)^(1 / (1 - d)),
//! C = (K eps0^(-h))^(1 / (1 - d))
//!     * 2^(h / (1 - d)^2) * M^(d / (1 - d)^2).
//! ```
//!
//! [`bootstrap_certificate`] checks the hypotheses numerically on a
//! sampled y — monotonicity, the recurrence on a dyadic eps grid, and
//! the quasi-monotonicity of Phi — and then tests the closed bound on
//! every sample with rho <= rho_max / (2 e), the conservative window
//! inside which the iteration's expanding radii stay covered by data.
//! Hypothesis failures are reported as
//! [`EstimateError::HypothesisViolated`] with the offending radius, so
//! a rejection pinpoints which assumption broke rather than just
//! failing the final bound.

use crate::error::EstimateError;
use serde::{Deserialize, Serialize};

/// Number of eps-grid levels: eps0 / 2^k for k = 0 .. LEVELS - 1.
const EPS_GRID_LEVELS: u32 = 6;
/// Points probed on [rho, 3 rho / 2] for Phi quasi-monotonicity.
const QUASI_POINTS: usize = 17;
/// Relative slack when checking the recurrence against sampled data.
const RECURRENCE_SLACK: f64 = 1e-12;
/// Relative slack when checking the certified bound itself.
const BOUND_SLACK: f64 = 1e-9;

/// Outcome of a bootstrap run whose hypotheses all held.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCertificate {
    /// Whether every checked sample satisfied the closed bound.
    pub passes: bool,
    /// The closed-form constant C.
    pub constant: f64,
    /// Number of samples inside the certified window.
    pub checked: usize,
    /// Largest ratio y / (C Phi^(1/(1-d))) over the checked samples.
    pub worst_margin: f64,
}

/// Interpolate y at `target` by log-log linear interpolation, exact on
/// pure powers of rho.
fn log_log_interp(rho: &[f64], y: &[f64], target: f64) -> f64 {
    let hi = rho
        .partition_point(|r| *r < target)
        .clamp(1, rho.len() - 1);
    let lo = hi - 1;
    let s = (target.ln() - rho[lo].ln()) / (rho[hi].ln() - rho[lo].ln());
    (y[lo].ln() + s * (y[hi].ln() - y[lo].ln())).exp()
}

/// Check the bootstrap hypotheses on `samples` = (rho, y) pairs and,
/// when they hold, certify the closed bound against the data.
///
/// `phi` must be evaluable on [rho_min, 3 rho_max / 2] and positive.
/// `d` is the contraction exponent in (0, 1), `h` the eps-singularity
/// power, `big_k` the recurrence constant, `big_m` the
/// quasi-monotonicity constant (at least 1) and `eps0` the largest
/// neighbourhood factor in (0, 1].
///
/// # Errors
///
/// [`EstimateError::InvalidParameter`] for out-of-range constants or
/// malformed samples; [`EstimateError::HypothesisViolated`] when the
/// data break monotonicity, the recurrence, or quasi-monotonicity.
pub fn bootstrap_certificate(
    samples: &[(f64, f64)],
    phi: impl Fn(f64) -> f64,
    d: f64,
    h: f64,
    big_k: f64,
    big_m: f64,
    eps0: f64,
) -> Result<BootstrapCertificate, EstimateError> {
    if !(d > 0.0 && d < 1.0) {
        return Err(EstimateError::InvalidParameter { name: "d", value: d });
    }
    if !(h >= 0.0) || !h.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "h", value: h });
    }
    if !(big_k > 0.0) || !big_k.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "big_k", value: big_k });
    }
    if !(big_m >= 1.0) || !big_m.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "big_m", value: big_m });
    }
    if !(eps0 > 0.0 && eps0 <= 1.0) {
        return Err(EstimateError::InvalidParameter { name: "eps0", value: eps0 });
    }
    if samples.len() < 4 {
        return Err(EstimateError::InvalidParameter {
            name: "samples",
            value: samples.len() as f64,
        });
    }
    for window in samples.windows(2) {
        if !(window[1].0 > window[0].0) {
            return Err(EstimateError::InvalidParameter {
                name: "samples",
                value: window[1].0,
            });
        }
    }
    for &(rho, y) in samples {
        if !(rho > 0.0 && y > 0.0) || !rho.is_finite() || !y.is_finite() {
            return Err(EstimateError::InvalidParameter { name: "samples", value: rho });
        }
    }
    let rho: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let y: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let rho_max = *rho.last().expect("nonempty samples");

    let phi_at = |t: f64| -> Result<f64, EstimateError> {
        let value = phi(t);
        if !(value > 0.0) || !value.is_finite() {
            return Err(EstimateError::InvalidParameter { name: "phi", value });
        }
        Ok(value)
    };

    // Hypothesis 1: y is monotone in one direction (not necessarily
    // strictly).  The direction itself is irrelevant to the bound.
    let non_increasing = y.windows(2).all(|w| w[1] <= w[0]);
    let non_decreasing = y.windows(2).all(|w| w[1] >= w[0]);
    if !non_increasing && !non_decreasing {
        let bad = y
            .windows(2)
            .position(|w| w[1] > w[0])
            .expect("a rise exists when not non-increasing");
        return Err(EstimateError::HypothesisViolated {
            inequality: "monotone",
            rho: rho[bad + 1],
        });
    }

    // Hypothesis 2: the recurrence on the dyadic eps grid, wherever
    // rho (1 + eps) still lies inside the data.
    for i in 0..rho.len() {
        for k in 0..EPS_GRID_LEVELS {
            let eps = eps0 / f64::from(1u32 << k);
            let target = rho[i] * (1.0 + eps);
            if target > rho_max * (1.0 + RECURRENCE_SLACK) {
                continue;
            }
            let shifted = log_log_interp(&rho, &y, target.min(rho_max));
            let bound = big_k * eps.powf(-h) * phi_at(rho[i])? * shifted.powf(d);
            if y[i] > bound * (1.0 + RECURRENCE_SLACK) {
                return Err(EstimateError::HypothesisViolated {
                    inequality: "recurrence",
                    rho: rho[i],
                });
            }
        }
    }

    // Hypothesis 3: Phi quasi-monotone on [rho, 3 rho / 2].
    for &r in &rho {
        let base = phi_at(r)?;
        for j in 0..QUASI_POINTS {
            let t = r * (1.0 + 0.5 * j as f64 / (QUASI_POINTS - 1) as f64);
            if phi_at(t)? > big_m * base * (1.0 + RECURRENCE_SLACK) {
                return Err(EstimateError::HypothesisViolated {
                    inequality: "phi quasi-monotone",
                    rho: r,
                });
            }
        }
    }

    let one_minus_d = 1.0 - d;
    let constant = (big_k * eps0.powf(-h)).powf(1.0 / one_minus_d)
        * 2f64.powf(h / (one_minus_d * one_minus_d))
        * big_m.powf(d / (one_minus_d * one_minus_d));

    let window_end = rho_max / (2.0 * std::f64::consts::E);
    let mut checked = 0usize;
    let mut worst_margin = 0.0f64;
    for i in 0..rho.len() {
        if rho[i] > window_end {
            break;
        }
        let bound = constant * phi_at(rho[i])?.powf(1.0 / one_minus_d);
        worst_margin = worst_margin.max(y[i] / bound);
        checked += 1;
    }
    Ok(BootstrapCertificate {
        passes: checked > 0 && worst_margin <= 1.0 + BOUND_SLACK,
        constant,
        checked,
        worst_margin,
    })
}
