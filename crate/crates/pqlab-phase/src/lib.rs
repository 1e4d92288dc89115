//! Phase-space analysis of the coupled radial system.
//!
//! In log-radius `t = ln r`, positive radial profiles of the coupled
//! p/q-Laplace system map to trajectories of an autonomous quadratic
//! vector field in four coordinates built from logarithmic slopes and
//! forcing-to-flux ratios (see [`PhaseState`]).  This crate provides that
//! dictionary in both directions plus the dynamical-systems toolbox on
//! the phase side:
//!
//! * [`sigma_field`] / [`sigma_jacobian`] — the vector field and its
//!   closed-form linearisation;
//! * [`fixed_point_catalog`] — the nine distinguished fixed points with
//!   closed-form coordinates, eigenvalues, unstable dimensions and
//!   sign-pattern admissibility;
//! * [`to_phase`] / [`reconstruct_uv`] — exact (log-space) transformations
//!   between radial profiles and phase trajectories;
//! * [`shoot_unstable`] / [`shoot_combination`] — launch trajectories
//!   along unstable eigendirections, tracking escape to infinity;
//! * [`asymptotic_fit`] — constant fits of `r^theta u` near the origin,
//!   turning reconstructed profiles into verified power-law asymptotics;
//! * [`sigma_residual`] — an independent finite-difference check that a
//!   trajectory actually solves the phase system.

mod catalog;
mod error;
mod field;
mod fit;
mod linalg;
mod poly;
mod shoot;
mod state;
mod transform;

pub use catalog::{catalog_point, fixed_point_catalog, FixedPointInfo, FixedPointLabel};
pub use error::PhaseError;
pub use field::{sigma_field, sigma_jacobian};
pub use fit::asymptotic_fit;
pub use shoot::{
    shoot_combination, shoot_unstable, unstable_eigenvector, ShotTrajectory, Side, ETA_RANGE,
};
pub use state::PhaseState;
pub use transform::{reconstruct_uv, sigma_residual, to_phase};
