//! Radial shooting solver for quasilinear diffusion problems.
//!
//! This crate integrates the radial form of two problem families built on
//! the p-Laplace operator `div(|grad u|^(p-2) grad u)`:
//!
//! * coupled systems
//!   `Delta_p u = -eps1 |x|^a v^delta`, `Delta_q v = -eps2 |x|^b u^mu`
//!   with sign pattern `eps1, eps2` selected by
//!   [`SystemKind`](pqlab_exponents::SystemKind), and
//! * the scalar absorption equation `Delta_p u = c |x|^sigma u^Q`.
//!
//! Radial profiles are advanced in the flux variables
//! `m = r^(N-1) |u'|^(p-2) u'`, which keep the equations regular through
//! `u' = 0`, and in log-radius, which resolves the many decades of scale a
//! blow-up or extinction run covers.  Integration starts from a series
//! expansion at small radius (regular profiles have `u'(0) = 0`, so the
//! origin itself is a removable singularity of the flux form).
//!
//! The main entry points are:
//!
//! * [`solve_regular`] / [`solve_scalar`] — shoot a profile from given
//!   central values and classify the outcome as completed, blown up (with
//!   a bracket on the blow-up radius via [`blowup_radius`]), or extinct;
//! * [`series_startup`] — the small-radius expansion used to leave the
//!   origin, exposed for testing and for seeding other integrators;
//! * [`evaluate`] / [`ProfileInterpolant`] — monotone cubic interpolation
//!   of a computed profile at arbitrary radii;
//! * [`equation_residual`] — an independent finite-difference check that a
//!   profile actually satisfies its equation.

mod error;
mod interp;
mod problem;
mod residual;
mod solution;
mod solver;

pub mod ode;

pub use error::RadialError;
pub use interp::{evaluate, MonotoneCubic, ProfileInterpolant};
pub use problem::{Problem, ScalarParamError, ScalarParams};
pub use residual::{derivative_weights, equation_residual};
pub use solution::{Component, IntegratorStats, RadialSolution, SolutionStatus};
pub use solver::{
    blowup_radius, series_startup, solve_regular, solve_scalar, BLOWUP_THRESHOLD,
};
