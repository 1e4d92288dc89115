//! Power-law asymptotics: constant fits of `r^theta * u` near the origin.
//!
//! Many of the asymptotic statements this workspace verifies have the form
//! "`r^theta u(r)` tends to a positive constant as `r -> 0`".  The fit
//! below turns a sampled profile into such a statement: it restricts to
//! the decade of radii adjacent to the smallest sample, performs the
//! least-squares constant fit (the mean of `r^theta u` over the window),
//! and reports the worst relative deviation from that constant as the
//! drift.  A small drift certifies the power law on the sampled range;
//! the limit estimate is the fitted constant.

use crate::error::PhaseError;

/// Slack factor applied to the decade boundary so end-of-window samples
/// are not dropped to round-off.
const WINDOW_SLACK: f64 = 1.0 + 1e-9;

/// Constant fit of `r^theta * u` over the decade nearest the origin.
///
/// Returns `(limit, drift)`: the fitted constant and the maximum relative
/// deviation from it inside the window `[r_min, 10 r_min]`.  The radius
/// array need not be sorted; entries must be positive and finite.
///
/// # Errors
///
/// * [`PhaseError::InsufficientRange`] when the samples cover less than
///   one decade of radius, or the fit window holds fewer than two points;
/// * [`PhaseError::NonpositiveProfile`] when a windowed value of
///   `r^theta * u` is not positive and finite (the relative drift is then
///   meaningless);
/// * [`PhaseError::Profile`] with a length error for mismatched or empty
///   inputs.
pub fn asymptotic_fit(r: &[f64], u: &[f64], theta: f64) -> Result<(f64, f64), PhaseError> {
    if r.len() != u.len() || r.is_empty() {
        return Err(PhaseError::Profile(pqlab_radial::RadialError::LengthMismatch {
            name: "u",
            len: u.len(),
            expected: r.len().max(1),
        }));
    }
    let r_min = r.iter().cloned().fold(f64::INFINITY, f64::min);
    let r_max = r.iter().cloned().fold(0.0f64, f64::max);
    if !(r_min > 0.0) || !r_max.is_finite() {
        return Err(PhaseError::NonpositiveProfile {
            index: 0,
            value: r_min,
        });
    }
    let decades = (r_max / r_min).log10();
    if decades < 1.0 {
        return Err(PhaseError::InsufficientRange { decades });
    }

    let cutoff = 10.0 * r_min * WINDOW_SLACK;
    let mut values = Vec::new();
    for (index, (&ri, &ui)) in r.iter().zip(u.iter()).enumerate() {
        if ri <= cutoff {
            let value = ri.powf(theta) * ui;
            if !(value > 0.0) || !value.is_finite() {
                return Err(PhaseError::NonpositiveProfile { index, value });
            }
            values.push(value);
        }
    }
    if values.len() < 2 {
        return Err(PhaseError::InsufficientRange { decades });
    }

    let limit = values.iter().sum::<f64>() / values.len() as f64;
    let drift = values
        .iter()
        .map(|v| (v - limit).abs() / limit)
        .fold(0.0f64, f64::max);
    Ok((limit, drift))
}
