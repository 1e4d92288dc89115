//! Pointwise ratio between the two components near the origin.
//!
//! The weighted inequality bounds r^(q+b) u^mu by a constant multiple
//! of v^(q-1) near the origin.  On an exact power pair the two sides
//! are proportional with the exponents cancelling identically, so the
//! recorded constant is flat to rounding; on general solutions it
//! should merely stay within a bounded spread as r -> 0.

use crate::error::EstimateError;
use crate::report::{EstimateRecord, EstimateReport, DEFAULT_RATIO_BOUND};
use pqlab_radial::{Problem, RadialSolution};

/// The experiment certifies an r -> 0 statement: records cover the
/// innermost sampled decades spanning this factor.
const WINDOW_SPAN: f64 = 100.0;

/// Record r^(q+b) u^mu / v^(q-1) over the innermost two sampled
/// decades.
///
/// # Errors
///
/// [`EstimateError::ScalarProblem`] for scalar profiles;
/// [`EstimateError::RangeError`] when the samples span less than two
/// decades; [`EstimateError::ZeroDenominator`] when v vanishes inside
/// the window.
pub fn punctual_ratio(sol: &RadialSolution) -> Result<EstimateReport, EstimateError> {
    let params = match sol.problem() {
        Problem::System { params } => *params,
        Problem::Scalar { .. } => return Err(EstimateError::ScalarProblem),
    };
    if sol.r_max() < WINDOW_SPAN * sol.r_min() {
        return Err(EstimateError::RangeError {
            what: "punctual window",
            needed: WINDOW_SPAN * sol.r_min(),
            lo: sol.r_min(),
            hi: sol.r_max(),
        });
    }

    let weight = params.q() + params.b();
    let mu = params.mu();
    let qm1 = params.q() - 1.0;
    let window_end = sol.r().partition_point(|&x| x <= WINDOW_SPAN * sol.r_min());
    let mut records = Vec::with_capacity(window_end);
    for i in 0..window_end {
        let (r, u, v) = (sol.r()[i], sol.u()[i], sol.v()[i]);
        if !(v > 0.0) {
            return Err(EstimateError::ZeroDenominator { radius: r });
        }
        let lhs = r.powf(weight) * u.powf(mu);
        let rhs = v.powf(qm1);
        records.push(EstimateRecord {
            scale: r,
            lhs,
            rhs,
            constant: lhs / rhs,
        });
    }
    Ok(EstimateReport::from_records(
        "punctual-ratio",
        records,
        DEFAULT_RATIO_BOUND,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use pqlab_exponents::{
        compute_exponents, particular_coefficients, SystemKind, SystemParams,
    };
    use pqlab_radial::SolutionStatus;

    fn particular_profile(params: &SystemParams) -> RadialSolution {
        let exps = compute_exponents(params);
        let particular = particular_coefficients(params, &exps).expect("particular pair exists");
        let n = 600;
        let r: Vec<f64> = (0..n).map(|i| 1e-4 * 10f64.powf(i as f64 / 100.0)).collect();
        let u: Vec<f64> = r.iter().map(|x| particular.u(*x)).collect();
        let v: Vec<f64> = r.iter().map(|x| particular.v(*x)).collect();
        let du: Vec<f64> = r.iter().map(|x| particular.du(*x)).collect();
        let dv: Vec<f64> = r.iter().map(|x| particular.dv(*x)).collect();
        RadialSolution::from_samples(
            Problem::System { params: *params },
            r,
            u,
            v,
            du,
            dv,
            f64::INFINITY,
            f64::INFINITY,
            SolutionStatus::Completed { r_max: 100.0 },
        )
        .expect("valid samples")
    }

    #[test]
    fn reference_power_pair_ratio_is_flat() {
        let params = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
            .expect("valid parameters");
        let report = punctual_ratio(&particular_profile(&params)).expect("ratio runs");
        assert_eq!(report.verdict, Verdict::Bounded);
        // A* = B* = 2: constant = A*^mu / B*^(q-1) = 2.
        assert!((report.max_constant - 2.0).abs() < 1e-10);
        assert!(report.ratio() - 1.0 < 1e-10, "spread {}", report.ratio() - 1.0);
    }

    #[test]
    fn weighted_power_pair_ratio_is_flat() {
        // Asymmetric exponents and weights: the cancellation is the
        // exponent identity, not a symmetry accident.
        let params = SystemParams::new(3, 2.0, 2.0, 0.5, 4.0, 0.25, -0.2, SystemKind::Absorption)
            .expect("valid parameters");
        let report = punctual_ratio(&particular_profile(&params)).expect("ratio runs");
        assert!(report.ratio() - 1.0 < 1e-10, "spread {}", report.ratio() - 1.0);
    }

    #[test]
    fn vanishing_v_inside_the_window_is_an_error() {
        let params = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Mixed)
            .expect("valid parameters");
        let n = 400;
        let r: Vec<f64> = (0..n).map(|i| 1e-3 * 10f64.powf(i as f64 / 100.0)).collect();
        let u = vec![1.0; n];
        let mut v = vec![1.0; n];
        v[5] = 0.0;
        let z = vec![0.0; n];
        let sol = RadialSolution::from_samples(
            Problem::System { params },
            r,
            u,
            v,
            z.clone(),
            z,
            1.0,
            1.0,
            SolutionStatus::Completed { r_max: 10.0 },
        )
        .expect("valid samples");
        assert!(matches!(
            punctual_ratio(&sol),
            Err(EstimateError::ZeroDenominator { .. })
        ));
    }

    #[test]
    fn short_ranges_are_rejected() {
        let params = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
            .expect("valid parameters");
        let r: Vec<f64> = (1..=50).map(|i| i as f64 / 50.0).collect();
        let ones = vec![1.0; 50];
        let z = vec![0.0; 50];
        let sol = RadialSolution::from_samples(
            Problem::System { params },
            r,
            ones.clone(),
            ones,
            z.clone(),
            z,
            1.0,
            1.0,
            SolutionStatus::Completed { r_max: 1.0 },
        )
        .expect("valid samples");
        assert!(matches!(
            punctual_ratio(&sol),
            Err(EstimateError::RangeError { .. })
        ));
    }
}
