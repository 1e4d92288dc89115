//! Blow-up envelope constants along families of initial data.
//!
//! For absorption-type systems every regular solution blows up at a
//! finite radius R(u0, v0), and the upper estimate near the boundary
//! predicts u0 * R^gamma to be controlled.  Along the scaling family
//! (s^gamma u0, s^xi v0) the radius scales exactly like 1/s, so the
//! constant is invariant; generic families only stay within a bounded
//! spread.  The scalar problem has the same structure with its own
//! envelope exponent.

use crate::error::EstimateError;
use crate::report::{EstimateRecord, EstimateReport, DEFAULT_RATIO_BOUND};
use pqlab_exponents::{compute_exponents, SystemParams};
use pqlab_radial::{blowup_radius, solve_regular, solve_scalar, ScalarParams};
use rayon::prelude::*;

/// Domain cap for envelope solves; datum families shrink the blow-up
/// radius, so a run reaching this radius has genuinely failed to
/// blow up.
const KO_R_MAX: f64 = 64.0;
/// Relative tolerance for the envelope solves.
const KO_TOL: f64 = 1e-10;

/// Family of initial data for an envelope experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KoRay {
    /// Scaling family: datum k is (2^(k gamma) u, 2^(k xi) v), the
    /// exact symmetry of the system.  Constants should coincide.
    Scaling { u_base: f64, v_base: f64 },
    /// Generic family: datum k is (2^k u, v), which is not a symmetry.
    /// Constants should stay within the default spread only.
    Doubling { u_base: f64, v_base: f64 },
}

/// Blow-up envelope constants u0 * R^gamma along a family of data.
///
/// # Errors
///
/// [`EstimateError::InvalidParameter`] for a nonpositive base datum or
/// zero count; [`EstimateError::NoBlowUp`] when any family member runs
/// to the domain cap or goes extinct instead of blowing up; solver
/// failures pass through.
pub fn ko_envelope(
    params: &SystemParams,
    ray: &KoRay,
    count: usize,
) -> Result<EstimateReport, EstimateError> {
    if count == 0 {
        return Err(EstimateError::InvalidParameter {
            name: "count",
            value: 0.0,
        });
    }
    let (u_base, v_base) = match *ray {
        KoRay::Scaling { u_base, v_base } | KoRay::Doubling { u_base, v_base } => (u_base, v_base),
    };
    for (name, value) in [("u_base", u_base), ("v_base", v_base)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(EstimateError::InvalidParameter { name, value });
        }
    }
    let exps = compute_exponents(params);
    let gamma = exps.gamma_ab;
    let xi = exps.xi_ab;

    let records: Result<Vec<EstimateRecord>, EstimateError> = (0..count)
        .into_par_iter()
        .map(|k| {
            let s = 2.0f64.powi(k as i32);
            let (u0, v0) = match ray {
                KoRay::Scaling { .. } => (s.powf(gamma) * u_base, s.powf(xi) * v_base),
                KoRay::Doubling { .. } => (s * u_base, v_base),
            };
            let sol = solve_regular(params, u0, v0, KO_R_MAX, KO_TOL)?;
            let (r_lo, r_hi) = blowup_radius(&sol).map_err(|_| EstimateError::NoBlowUp {
                status: sol.status().label(),
            })?;
            let radius = 0.5 * (r_lo + r_hi);
            Ok(EstimateRecord {
                scale: u0,
                lhs: u0,
                rhs: radius,
                constant: u0 * radius.powf(gamma),
            })
        })
        .collect();
    Ok(EstimateReport::from_records(
        "ko-envelope",
        records?,
        DEFAULT_RATIO_BOUND,
    ))
}

/// Scalar counterpart: constants u0 * R^kappa along the scalar scaling
/// family, with kappa the scalar envelope exponent p/(Q+1-p).
///
/// # Errors
///
/// As for [`ko_envelope`].
pub fn ko_envelope_scalar(
    sc: &ScalarParams,
    u_base: f64,
    count: usize,
) -> Result<EstimateReport, EstimateError> {
    if count == 0 {
        return Err(EstimateError::InvalidParameter {
            name: "count",
            value: 0.0,
        });
    }
    if !(u_base > 0.0) || !u_base.is_finite() {
        return Err(EstimateError::InvalidParameter {
            name: "u_base",
            value: u_base,
        });
    }
    let kappa = sc.ko_exponent();
    let records: Result<Vec<EstimateRecord>, EstimateError> = (0..count)
        .into_par_iter()
        .map(|k| {
            let s = 2.0f64.powi(k as i32);
            let u0 = s.powf(kappa) * u_base;
            let sol = solve_scalar(sc, u0, KO_R_MAX, KO_TOL)?;
            let (r_lo, r_hi) = blowup_radius(&sol).map_err(|_| EstimateError::NoBlowUp {
                status: sol.status().label(),
            })?;
            let radius = 0.5 * (r_lo + r_hi);
            Ok(EstimateRecord {
                scale: u0,
                lhs: u0,
                rhs: radius,
                constant: u0 * radius.powf(kappa),
            })
        })
        .collect();
    Ok(EstimateReport::from_records(
        "ko-envelope-scalar",
        records?,
        DEFAULT_RATIO_BOUND,
    ))
}
