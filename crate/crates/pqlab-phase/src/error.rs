//! Error type for phase-space operations.

use pqlab_radial::RadialError;
use thiserror::Error;

/// Errors reported by the phase-space layer.
#[derive(Debug, Error)]
pub enum PhaseError {
    /// The coupling determinant `D = delta*mu - (p-1)(q-1)` vanishes, so
    /// the power-law exponents (and with them several fixed points) are
    /// undefined.
    #[error("coupling determinant D = {big_d:e} is too close to zero")]
    DegenerateExponents { big_d: f64 },

    /// A scalar-problem profile was passed to an operation that needs the
    /// coupled system (the phase space is built from both components).
    #[error("phase-space operations require a coupled-system profile")]
    ScalarProblem,

    /// After trimming samples with vanishing values or slopes, too little
    /// of the profile remains to form a trajectory.
    #[error("profile degenerates on the sampled range: {usable} usable samples of {total}")]
    DegenerateProfile { usable: usize, total: usize },

    /// A trajectory state has a vanishing coordinate, so the profile
    /// reconstruction formulas (which divide by the coordinates) fail.
    #[error("trajectory state {index} has {name} = 0; reconstruction needs nonzero coordinates")]
    ZeroCoordinate { index: usize, name: &'static str },

    /// The selected eigenvalue has a nonzero imaginary part, so there is
    /// no real eigenvector to shoot along.
    #[error("eigenvalue {index} is not real (imaginary part {imag:e}); cannot shoot along it")]
    NonrealEigenvector { index: usize, imag: f64 },

    /// The selected eigenvalue is real but not positive, so it does not
    /// span an unstable direction.
    #[error("eigenvalue {index} has real part {real:e} <= 0; not an unstable direction")]
    NotUnstable { index: usize, real: f64 },

    /// An eigenvalue index outside `0..4` was requested.
    #[error("eigenvalue index {index} out of range (a 4x4 Jacobian has indices 0..4)")]
    EigenIndexOutOfRange { index: usize },

    /// The shifted Jacobian `J - lambda I` turned out numerically
    /// nonsingular, so no eigenvector could be extracted.  With closed-form
    /// eigenvalues this indicates an inconsistent fixed-point description.
    #[error("no eigenvector found for eigenvalue {index}: shifted Jacobian is nonsingular")]
    EigenvectorFailure { index: usize },

    /// The displacement magnitude lies outside the supported window.
    #[error("displacement eta = {value:e} outside supported range [1e-10, 1e-4]")]
    InvalidEta { value: f64 },

    /// A non-positive integration span was requested.
    #[error("integration span {value:e} must be positive")]
    InvalidSpan { value: f64 },

    /// A non-positive anchor radius was requested for reconstruction.
    #[error("anchor radius {value:e} must be positive and finite")]
    InvalidAnchor { value: f64 },

    /// The trajectory left the ball where the dynamics are trusted almost
    /// immediately, before covering any useful span.
    #[error("trajectory escaped to infinity at t = {t_escape:e} before covering a useful span")]
    EscapeToInfinity { t_escape: f64 },

    /// A fit window spanning at least one decade of radius was requested
    /// on data covering less than that.
    #[error("profile spans {decades:.3} decades of radius; at least one decade is required")]
    InsufficientRange { decades: f64 },

    /// A profile passed to a fit was not positive on the fit window.
    #[error("profile must be positive on the fit window (sample {index} is {value:e})")]
    NonpositiveProfile { index: usize, value: f64 },

    /// Assembling a reconstructed profile failed at the radial layer.
    #[error(transparent)]
    Profile(#[from] RadialError),
}
