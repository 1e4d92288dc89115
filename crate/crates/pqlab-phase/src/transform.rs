//! Transformations between radial profiles and phase trajectories.
//!
//! A positive profile pair with nonvanishing slopes determines a phase
//! trajectory through the coordinate definitions on [`PhaseState`]; the
//! map is invertible, and the inverse has the closed form
//!
//! ```text
//! u = r^-gamma * (|X|^(p-1) |Z|)^((q-1)/D) * (|Y|^(q-1) |W|)^(delta/D)
//! v = r^-xi    * (|X|^(p-1) |Z|)^(mu/D)    * (|Y|^(q-1) |W|)^((p-1)/D)
//! ```
//!
//! which follows from the exact identities
//! `|X|^(p-1) |Z| = r^(p+a) v^delta u^(1-p)` and
//! `|Y|^(q-1) |W| = r^(q+b) u^mu v^(1-q)`.  Both directions are computed
//! in logarithmic space so profiles spanning hundreds of orders of
//! magnitude survive the round trip.
//!
//! A trajectory only determines radii up to a common factor (the phase
//! system is autonomous), so reconstruction takes an anchor radius
//! assigned to the first state; later radii follow from the stored time
//! differences.

use pqlab_exponents::{compute_exponents, SystemParams};
use pqlab_radial::{derivative_weights, Problem, RadialError, RadialSolution, SolutionStatus};

use crate::error::PhaseError;
use crate::field::sigma_field;
use crate::state::PhaseState;

/// Minimum number of usable samples to call a trajectory a trajectory.
const MIN_TRAJECTORY_STATES: usize = 3;

/// Additive floor in the trajectory-defect denominator.
const DEFECT_FLOOR: f64 = 1e-30;

/// Map a computed profile to its phase trajectory.
///
/// Samples where a component or a slope vanishes (or where a coordinate
/// overflows) carry no phase information and are dropped; for the profiles
/// this crate works with such samples only occur at the ends (central
/// startup, extinction points).
///
/// # Errors
///
/// * [`PhaseError::ScalarProblem`] for scalar-problem profiles;
/// * [`PhaseError::DegenerateProfile`] when fewer than three samples
///   survive trimming (e.g. the zero solution).
pub fn to_phase(sol: &RadialSolution) -> Result<Vec<PhaseState>, PhaseError> {
    let params = match sol.problem() {
        Problem::System { params } => *params,
        Problem::Scalar { .. } => return Err(PhaseError::ScalarProblem),
    };
    let (eps1, eps2) = params.kind().signs();
    let (p, q) = (params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());

    let total = sol.len();
    let mut states = Vec::with_capacity(total);
    for i in 0..total {
        let (r, u, v) = (sol.r()[i], sol.u()[i], sol.v()[i]);
        let (du, dv) = (sol.du()[i], sol.dv()[i]);
        if !(u > 0.0 && v > 0.0) || du == 0.0 || dv == 0.0 {
            continue;
        }
        let t = r.ln();
        let x = -(du / u) * r;
        let y = -(dv / v) * r;
        // The flux ratios multiply powers of potentially huge numbers;
        // assemble their logarithms first.
        let z = -eps1
            * du.signum()
            * ((1.0 + a) * t + delta * v.ln() - (p - 1.0) * du.abs().ln()).exp();
        let w = -eps2
            * dv.signum()
            * ((1.0 + b) * t + mu * u.ln() - (q - 1.0) * dv.abs().ln()).exp();
        if !(x.is_finite() && y.is_finite() && z.is_finite() && w.is_finite()) {
            continue;
        }
        states.push(PhaseState { x, y, z, w, t });
    }

    if states.len() < MIN_TRAJECTORY_STATES {
        return Err(PhaseError::DegenerateProfile {
            usable: states.len(),
            total,
        });
    }
    Ok(states)
}

/// Invert a phase trajectory back into a radial profile pair.
///
/// The first state is placed at radius `anchor_r`; the radius of every
/// later state follows from its time offset, `r_i = anchor_r *
/// exp(t_i - t_0)`.  Shifting all times by a constant therefore leaves the
/// reconstruction unchanged, and rescaling `anchor_r` rescales the profile
/// exactly as the scaling family of the equations predicts.
///
/// The returned profile is marked as completed on its sampled range; its
/// recorded central values are the first reconstructed samples (a
/// trajectory carries no data at `r = 0`).
///
/// # Errors
///
/// * [`PhaseError::ZeroCoordinate`] when a state has a vanishing (or
///   non-finite) coordinate — such states sit on an invariant hyperplane
///   where the inversion formulas divide by zero;
/// * [`PhaseError::InvalidAnchor`] for a non-positive anchor radius;
/// * [`PhaseError::DegenerateExponents`] when the coupling determinant
///   vanishes;
/// * [`PhaseError::Profile`] when the assembled samples fail profile
///   validation (e.g. non-increasing times).
pub fn reconstruct_uv(
    traj: &[PhaseState],
    params: &SystemParams,
    anchor_r: f64,
) -> Result<RadialSolution, PhaseError> {
    if !(anchor_r > 0.0) || !anchor_r.is_finite() {
        return Err(PhaseError::InvalidAnchor { value: anchor_r });
    }
    if traj.len() < 2 {
        return Err(PhaseError::Profile(RadialError::TooFewSamples {
            len: traj.len(),
            required: 2,
        }));
    }
    let exps = compute_exponents(params);
    if exps.big_d == 0.0 {
        return Err(PhaseError::DegenerateExponents { big_d: exps.big_d });
    }
    for (index, state) in traj.iter().enumerate() {
        for (name, value) in [
            ("X", state.x),
            ("Y", state.y),
            ("Z", state.z),
            ("W", state.w),
        ] {
            if value == 0.0 || !value.is_finite() {
                return Err(PhaseError::ZeroCoordinate { index, name });
            }
        }
    }

    let (p, q) = (params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let big_d = exps.big_d;
    let t0 = traj[0].t;
    let ln_anchor = anchor_r.ln();

    let n = traj.len();
    let mut r = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    let mut du = Vec::with_capacity(n);
    let mut dv = Vec::with_capacity(n);
    for state in traj {
        let ln_r = ln_anchor + (state.t - t0);
        let ri = ln_r.exp();
        // ln of the two exact flux-ratio combinations
        let base_u = (p - 1.0) * state.x.abs().ln() + state.z.abs().ln();
        let base_v = (q - 1.0) * state.y.abs().ln() + state.w.abs().ln();
        let ln_u = -exps.gamma_ab * ln_r + ((q - 1.0) * base_u + delta * base_v) / big_d;
        let ln_v = -exps.xi_ab * ln_r + (mu * base_u + (p - 1.0) * base_v) / big_d;
        let ui = ln_u.exp();
        let vi = ln_v.exp();
        r.push(ri);
        u.push(ui);
        v.push(vi);
        // X = -r u'/u inverts to u' = -X u / r.
        du.push(-state.x * ui / ri);
        dv.push(-state.y * vi / ri);
    }

    let status = SolutionStatus::Completed { r_max: r[n - 1] };
    let (u0, v0) = (u[0], v[0]);
    RadialSolution::from_samples(
        Problem::System { params: *params },
        r,
        u,
        v,
        du,
        dv,
        u0,
        v0,
        status,
    )
    .map_err(PhaseError::from)
}

/// Maximum normalised defect of a trajectory against the phase field.
///
/// Differentiates each coordinate on the stored time grid (five-point
/// centered stencils in the interior, three-point fallback on short
/// trajectories) and compares with the field value.  The defect is
/// normalised by the larger of the local field magnitude and the
/// coordinate magnitude: at fixed points the field vanishes identically
/// and the coordinates set the only available scale, so constant
/// trajectories evaluate to differencing round-off, not to `0/0`.
///
/// # Errors
///
/// * [`PhaseError::Profile`] with a sample-count error for trajectories
///   shorter than three states, or a monotonicity error when the time
///   grid is not strictly increasing.
pub fn sigma_residual(traj: &[PhaseState], params: &SystemParams) -> Result<f64, PhaseError> {
    let n = traj.len();
    if n < MIN_TRAJECTORY_STATES {
        return Err(PhaseError::Profile(RadialError::TooFewSamples {
            len: n,
            required: MIN_TRAJECTORY_STATES,
        }));
    }
    for i in 1..n {
        if !(traj[i].t > traj[i - 1].t) {
            return Err(PhaseError::Profile(RadialError::NonMonotoneRadii { index: i }));
        }
    }

    let times: Vec<f64> = traj.iter().map(|s| s.t).collect();
    let (lo, hi, half) = if n >= 7 { (2, n - 3, 2) } else { (1, n - 2, 1) };
    let mut worst = 0.0f64;
    for i in lo..=hi {
        let window = (i - half)..=(i + half);
        let nodes = &times[window.clone()];
        let weights = derivative_weights(times[i], nodes);
        let mut ddt = [0.0f64; 4];
        for (w, state) in weights.iter().zip(&traj[window]) {
            let coords = state.coords();
            for (d, c) in ddt.iter_mut().zip(coords) {
                *d += w * c;
            }
        }
        let field = sigma_field(&traj[i], params);
        let defect = ddt
            .iter()
            .zip(field)
            .map(|(d, f)| (d - f).abs())
            .fold(0.0f64, f64::max);
        let field_mag = field.iter().fold(0.0f64, |m, f| m.max(f.abs()));
        let scale = field_mag.max(traj[i].norm_inf()) + DEFECT_FLOOR;
        worst = worst.max(defect / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pqlab_exponents::{particular_coefficients, SystemKind};

    fn reference() -> SystemParams {
        SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption).unwrap()
    }

    /// The power-law pair sampled on a geometric grid.
    fn particular_profile(params: &SystemParams, r_lo: f64, r_hi: f64, n: usize) -> RadialSolution {
        let exps = compute_exponents(params);
        let sol = particular_coefficients(params, &exps).unwrap();
        let ratio = (r_hi / r_lo).powf(1.0 / (n as f64 - 1.0));
        let r: Vec<f64> = (0..n).map(|i| r_lo * ratio.powi(i as i32)).collect();
        let u: Vec<f64> = r.iter().map(|&ri| sol.u(ri)).collect();
        let v: Vec<f64> = r.iter().map(|&ri| sol.v(ri)).collect();
        let du: Vec<f64> = r.iter().map(|&ri| sol.du(ri)).collect();
        let dv: Vec<f64> = r.iter().map(|&ri| sol.dv(ri)).collect();
        RadialSolution::from_samples(
            Problem::System { params: *params },
            r.clone(),
            u,
            v,
            du,
            dv,
            f64::INFINITY,
            f64::INFINITY,
            SolutionStatus::Completed { r_max: r_hi },
        )
        .unwrap()
    }

    #[test]
    fn power_law_profile_maps_to_a_constant_trajectory() {
        let params = reference();
        let sol = particular_profile(&params, 0.5, 2.0, 101);
        let traj = to_phase(&sol).unwrap();
        assert_eq!(traj.len(), 101);
        for state in &traj {
            for (got, want) in state.coords().iter().zip([2.0, 2.0, -1.0, -1.0]) {
                assert!(
                    (got - want).abs() < 1e-12,
                    "state {state:?} differs from (2,2,-1,-1)"
                );
            }
        }
        let residual = sigma_residual(&traj, &params).unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn constant_trajectory_reconstructs_the_power_law() {
        let params = reference();
        let traj: Vec<PhaseState> = (0..11)
            .map(|i| PhaseState::from_coords([2.0, 2.0, -1.0, -1.0], 0.1 * i as f64))
            .collect();
        let sol = reconstruct_uv(&traj, &params, 1.0).unwrap();
        for (i, &ri) in sol.r().iter().enumerate() {
            let want = 2.0 / (ri * ri);
            assert!((sol.u()[i] - want).abs() < 1e-12 * want);
            assert!((sol.v()[i] - want).abs() < 1e-12 * want);
            let want_slope = -4.0 / (ri * ri * ri);
            assert!((sol.du()[i] - want_slope).abs() < 1e-12 * want_slope.abs());
        }
    }

    #[test]
    fn anchor_rescaling_follows_the_scaling_family() {
        // Reconstructing the same trajectory at anchor e instead of 1
        // evaluates the power-law family at e-fold larger radii, so the
        // first sample shrinks by exactly e^-gamma.
        let params = reference();
        let traj: Vec<PhaseState> = (0..5)
            .map(|i| PhaseState::from_coords([2.0, 2.0, -1.0, -1.0], 0.25 * i as f64))
            .collect();
        let base = reconstruct_uv(&traj, &params, 1.0).unwrap();
        let shifted = reconstruct_uv(&traj, &params, std::f64::consts::E).unwrap();
        let ratio = shifted.u()[0] / base.u()[0];
        let want = (-2.0f64).exp();
        assert!((ratio - want).abs() < 1e-13);
    }

    #[test]
    fn zero_coordinates_are_rejected() {
        let params = reference();
        let mut traj: Vec<PhaseState> = (0..5)
            .map(|i| PhaseState::from_coords([2.0, 2.0, -1.0, -1.0], 0.1 * i as f64))
            .collect();
        traj[3].z = 0.0;
        match reconstruct_uv(&traj, &params, 1.0) {
            Err(PhaseError::ZeroCoordinate { index: 3, name: "Z" }) => {}
            other => panic!("expected ZeroCoordinate, got {other:?}"),
        }
    }

    #[test]
    fn bad_anchor_is_rejected() {
        let params = reference();
        let traj: Vec<PhaseState> = (0..5)
            .map(|i| PhaseState::from_coords([2.0, 2.0, -1.0, -1.0], 0.1 * i as f64))
            .collect();
        assert!(matches!(
            reconstruct_uv(&traj, &params, 0.0),
            Err(PhaseError::InvalidAnchor { .. })
        ));
        assert!(matches!(
            reconstruct_uv(&traj, &params, -2.0),
            Err(PhaseError::InvalidAnchor { .. })
        ));
    }

    #[test]
    fn residual_flags_a_corrupted_trajectory() {
        let params = reference();
        let sol = particular_profile(&params, 0.5, 2.0, 101);
        let mut traj = to_phase(&sol).unwrap();
        traj[50].x *= 1.01;
        let residual = sigma_residual(&traj, &params).unwrap();
        assert!(residual > 1e-3, "corruption went unnoticed: {residual}");
    }

    #[test]
    fn short_trajectories_are_rejected() {
        let params = reference();
        let traj = vec![PhaseState::from_coords([1.0; 4], 0.0); 2];
        assert!(sigma_residual(&traj, &params).is_err());
    }
}
