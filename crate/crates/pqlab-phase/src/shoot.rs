//! Shooting along unstable directions of cataloged fixed points.
//!
//! Trajectories that leave a fixed point along an unstable eigendirection
//! trace, after reconstruction, radial profiles with the asymptotic
//! behaviour the fixed point encodes.  A shot displaces the initial state
//! by a small amount `eta` along a real unstable eigenvector (or a
//! combination of them), then integrates the phase field forward with the
//! same adaptive Runge-Kutta machinery the radial solver uses.
//!
//! Escape to infinity in finite time is the expected fate of most shots —
//! it corresponds to finite-radius blow-up or extinction of the profile —
//! so escape is reported as data on the trajectory.  Only a trajectory
//! that escapes before covering any useful time span is an error.

use pqlab_exponents::SystemParams;
use pqlab_radial::ode::{
    Control, Integrator, OdeSystem, StepController, Tolerances,
};

use crate::catalog::FixedPointInfo;
use crate::error::PhaseError;
use crate::field::{sigma_field, sigma_jacobian};
use crate::linalg::nullspace_vector;
use crate::state::PhaseState;

/// Supported displacement magnitudes.  Below the lower end the
/// displacement drowns in integration round-off; above the upper end the
/// linearisation no longer describes the first stretch of the trajectory.
pub const ETA_RANGE: (f64, f64) = (1e-10, 1e-4);

/// Trajectories whose state norm exceeds this are declared escaped: the
/// quadratic field guarantees they reach infinity in finite time.
const ESCAPE_NORM: f64 = 1e8;

/// An escape earlier than this time span after launch yields an error
/// instead of a trajectory: nothing useful was covered.
const MIN_ESCAPE_SPAN: f64 = 1.0;

/// Output-density cap: no accepted step is wider than this in `t`.
const MAX_T_STEP: f64 = 1e-2;

/// Relative integration tolerance for shots.  Tight, because the signal
/// of interest near the fixed point is the displacement itself.
const SHOT_RTOL: f64 = 1e-12;

/// Absolute integration tolerance for shots.
const SHOT_ATOL: f64 = 1e-14;

/// Which side of the eigenvector to displace toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// `+1` or `-1`.
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// A trajectory shot from a fixed point.
#[derive(Debug, Clone)]
pub struct ShotTrajectory {
    /// States in increasing time, starting at the displaced initial state
    /// (time starts at zero; reconstruction assigns radii via an anchor).
    pub states: Vec<PhaseState>,
    /// Time at which the state norm exceeded the escape cutoff, if it did.
    pub escape_time: Option<f64>,
    /// Sign pattern of the final state, e.g. `"X<0, Y<0, Z>0, W>0"`;
    /// useful for matching a shot against the orthant its asymptotic
    /// regime predicts.
    pub sign_pattern: String,
    /// Eigenvalue (largest selected one, for combination shots) along
    /// which the shot was launched.
    pub eigenvalue: f64,
    /// Unit displacement direction actually used.
    pub direction: [f64; 4],
}

/// The phase field as an ODE right-hand side.
struct SigmaOde<'a> {
    params: &'a SystemParams,
}

impl OdeSystem<4> for SigmaOde<'_> {
    fn rhs(&self, t: f64, y: &[f64; 4], dydt: &mut [f64; 4]) {
        *dydt = sigma_field(&PhaseState::from_coords(*y, t), self.params);
    }
}

/// Validate a selected eigenvalue and return its real part.
fn unstable_eigenvalue(fp: &FixedPointInfo, index: usize) -> Result<f64, PhaseError> {
    if index >= 4 {
        return Err(PhaseError::EigenIndexOutOfRange { index });
    }
    let lambda = fp.eigenvalues[index];
    if lambda.im != 0.0 {
        return Err(PhaseError::NonrealEigenvector {
            index,
            imag: lambda.im,
        });
    }
    if lambda.re <= 0.0 {
        return Err(PhaseError::NotUnstable {
            index,
            real: lambda.re,
        });
    }
    Ok(lambda.re)
}

/// Real unit eigenvector of the Jacobian at a cataloged point.
///
/// Solves `(J - lambda I) v = 0` with the closed-form eigenvalue; for
/// repeated eigenvalues a deterministic representative is returned.
///
/// # Errors
///
/// [`PhaseError::NonrealEigenvector`] / [`PhaseError::NotUnstable`] for
/// unusable eigenvalues, [`PhaseError::EigenvectorFailure`] when the
/// shifted Jacobian turns out numerically nonsingular.
pub fn unstable_eigenvector(
    fp: &FixedPointInfo,
    params: &SystemParams,
    index: usize,
) -> Result<[f64; 4], PhaseError> {
    let lambda = unstable_eigenvalue(fp, index)?;
    let state = PhaseState::from_coords(fp.coords, 0.0);
    let mut shifted = sigma_jacobian(&state, params);
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    nullspace_vector(shifted).ok_or(PhaseError::EigenvectorFailure { index })
}

/// Integrate the field from a displaced initial state.
fn launch(
    initial: [f64; 4],
    params: &SystemParams,
    t_span: f64,
) -> (Vec<PhaseState>, Option<f64>) {
    let system = SigmaOde { params };
    let ctrl = StepController {
        h_max: MAX_T_STEP,
        ..StepController::default()
    };
    let mut integrator = Integrator::new(Tolerances::uniform(SHOT_RTOL, SHOT_ATOL), ctrl);

    let mut states = vec![PhaseState::from_coords(initial, 0.0)];
    let mut escape_time = None;
    let outcome = integrator.run(&system, 0.0, initial, t_span, |step| {
        let state = PhaseState::from_coords(step.y1, step.t1);
        let escaped = state.norm_inf() > ESCAPE_NORM;
        states.push(state);
        if escaped {
            escape_time = Some(step.t1);
            Control::Halt
        } else {
            Control::Continue
        }
    });
    // Step underflow without an escape flag can only happen on the final
    // approach to the blow-up time; treat the covered range as the result.
    let _ = outcome;
    (states, escape_time)
}

/// Shoot along one unstable eigendirection of a fixed point.
///
/// The initial state is `coords + side * eta * v` with `v` the unit
/// eigenvector of the selected (real, positive) eigenvalue; integration
/// runs from time `0` to `t_span` or until the state norm exceeds `1e8`,
/// whichever comes first.
///
/// # Errors
///
/// Input validation errors as listed on the fields, plus
/// [`PhaseError::EscapeToInfinity`] when the trajectory escapes before
/// covering a unit time span (nothing useful recorded).
pub fn shoot_unstable(
    fp: &FixedPointInfo,
    eig_index: usize,
    side: Side,
    params: &SystemParams,
    t_span: f64,
    eta: f64,
) -> Result<ShotTrajectory, PhaseError> {
    shoot_combination(fp, &[(eig_index, side.sign())], params, t_span, eta)
}

/// Shoot along a weighted combination of unstable eigendirections.
///
/// Each entry of `weights` selects an eigenvalue index (which must be
/// real and positive) and a signed weight; the displacement is the
/// normalised weighted sum of the unit eigenvectors, scaled by `eta`.
/// Points with multidimensional unstable manifolds (e.g. a
/// three-dimensional one on the harmonic-escape point) need such
/// combinations to reach the interior of the manifold.
pub fn shoot_combination(
    fp: &FixedPointInfo,
    weights: &[(usize, f64)],
    params: &SystemParams,
    t_span: f64,
    eta: f64,
) -> Result<ShotTrajectory, PhaseError> {
    if !(eta >= ETA_RANGE.0 && eta <= ETA_RANGE.1) {
        return Err(PhaseError::InvalidEta { value: eta });
    }
    if !(t_span > 0.0) || !t_span.is_finite() {
        return Err(PhaseError::InvalidSpan { value: t_span });
    }
    if weights.is_empty() {
        return Err(PhaseError::EigenIndexOutOfRange { index: 4 });
    }

    let mut direction = [0.0f64; 4];
    let mut top_eigenvalue = f64::NEG_INFINITY;
    for &(index, weight) in weights {
        let lambda = unstable_eigenvalue(fp, index)?;
        top_eigenvalue = top_eigenvalue.max(lambda);
        let v = unstable_eigenvector(fp, params, index)?;
        for (d, e) in direction.iter_mut().zip(v) {
            *d += weight * e;
        }
    }
    let norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(PhaseError::EigenvectorFailure { index: weights[0].0 });
    }
    for d in direction.iter_mut() {
        *d /= norm;
    }

    let initial = std::array::from_fn(|i| fp.coords[i] + eta * direction[i]);
    let (states, escape_time) = launch(initial, params, t_span);

    if let Some(t_escape) = escape_time {
        if t_escape < MIN_ESCAPE_SPAN {
            return Err(PhaseError::EscapeToInfinity { t_escape });
        }
    }
    let sign_pattern = states.last().expect("at least the initial state").sign_pattern();
    Ok(ShotTrajectory {
        states,
        escape_time,
        sign_pattern,
        eigenvalue: top_eigenvalue,
        direction,
    })
}
