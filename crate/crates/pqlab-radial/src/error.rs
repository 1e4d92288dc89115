//! Error type shared by the solver operations.

use thiserror::Error;

/// Failure modes of the radial solver and its accessors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    /// Local error control could not reach the requested tolerance; the
    /// radius of the last accepted sample is reported.
    #[error("step size underflow at radius {radius}: local error control cannot reach tolerance")]
    StepFailure { radius: f64 },
    /// Series startup needs at least one nonzero initial value.
    #[error("degenerate start: both initial values are zero")]
    DegenerateStart,
    /// Blow-up bracket requested from a solution that did not blow up.
    #[error("solution did not blow up (status {status})")]
    NotBlownUp { status: &'static str },
    /// Evaluation outside the sampled radius range.
    #[error("radius {r} outside sampled range [{r_min}, {r_max}]")]
    OutOfRange { r: f64, r_min: f64, r_max: f64 },
    /// Tolerance must lie strictly inside (1e-14, 1e-3).
    #[error("tolerance {tol} outside the accepted open interval (1e-14, 1e-3)")]
    InvalidTolerance { tol: f64 },
    /// Initial data must be finite and nonnegative.
    #[error("initial value {name} = {value} must be finite and nonnegative")]
    InvalidInitialData { name: &'static str, value: f64 },
    /// Domain radius must be positive and finite.
    #[error("domain radius r_max = {value} must be positive and finite")]
    InvalidRadius { value: f64 },
    /// Startup radius must be positive and finite.
    #[error("startup radius r_start = {value} must be positive and finite")]
    InvalidStartRadius { value: f64 },
    /// Operations on sampled profiles need a minimum number of samples.
    #[error("operation requires at least {required} samples, got {len}")]
    TooFewSamples { len: usize, required: usize },
    /// Sample radii must be strictly increasing and positive.
    #[error("sample radii must be positive and strictly increasing (violated at index {index})")]
    NonMonotoneRadii { index: usize },
    /// Profile vectors must all have the same length as the radii.
    #[error("profile column {name} has length {len}, expected {expected}")]
    LengthMismatch { name: &'static str, len: usize, expected: usize },
}
