//! Error type shared by the estimate experiments.

use pqlab_radial::RadialError;
use thiserror::Error;

/// Failures an estimate experiment can report.
#[derive(Debug, Error)]
pub enum EstimateError {
    /// An envelope experiment needs a blow-up radius but the solution
    /// ran to completion (or went extinct) instead.
    #[error("solution did not blow up (status: {status}); no envelope radius available")]
    NoBlowUp { status: &'static str },

    /// A ratio denominator vanished inside the evaluation range.
    #[error("denominator vanishes at r = {radius:.6e}")]
    ZeroDenominator { radius: f64 },

    /// An experiment asked for radii outside the sampled range.
    #[error("{what}: needs radius {needed:.6e} but the profile covers [{lo:.6e}, {hi:.6e}]")]
    RangeError {
        what: &'static str,
        needed: f64,
        lo: f64,
        hi: f64,
    },

    /// A bootstrap hypothesis failed on the supplied samples.
    #[error("bootstrap hypothesis `{inequality}` fails at rho = {rho:.6e}")]
    HypothesisViolated {
        inequality: &'static str,
        rho: f64,
    },

    /// The potential in a minorization check vanished while the
    /// numerator did not, so no constant can be recorded.
    #[error("potential vanishes at rho = {rho:.6e} against a nonzero numerator")]
    ZeroPotential { rho: f64 },

    /// The experiment needs the coupled system, not a scalar profile.
    #[error("scalar profiles carry no second component; experiment needs the coupled system")]
    ScalarProblem,

    /// A numeric argument is outside its documented domain.
    #[error("invalid argument {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Adaptive quadrature stalled before reaching its target.
    #[error("quadrature failed: {outcome}")]
    Quadrature { outcome: &'static str },

    /// An underlying profile operation failed.
    #[error(transparent)]
    Profile(#[from] RadialError),
}
