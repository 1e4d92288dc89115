//! Ball and annulus oscillation ratios of radial profiles.
//!
//! A Harnack-type inequality bounds sup/inf of a positive solution over
//! balls; its failure shows up as ratios that explode as the ball
//! shrinks toward a zero of the profile.  Both window shapes are
//! recorded: balls B(0, r) (max/min over all samples up to r, center
//! value included) and dyadic annuli [r, 2r].

use crate::error::EstimateError;
use crate::report::{EstimateRecord, EstimateReport, DEFAULT_RATIO_BOUND};
use pqlab_radial::{Component, RadialSolution};

/// Relative slack when matching sample radii against window endpoints.
const GRID_SLACK: f64 = 1e-12;

/// Oscillation reports for one profile component over both window
/// shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct HarnackRatios {
    /// sup/inf over balls B(0, r).
    pub ball: EstimateReport,
    /// sup/inf over annuli [r, 2r].
    pub annulus: EstimateReport,
}

/// Record sup/inf oscillation ratios of one component at each radius.
///
/// A vanishing infimum against a positive supremum is reported as an
/// infinite ratio (verdict Unbounded), not an error; an identically
/// zero window counts as ratio 1.
///
/// # Errors
///
/// [`EstimateError::RangeError`] when a requested radius (or its
/// doubled annulus end) falls outside the sampled range.
pub fn harnack_ratios(
    sol: &RadialSolution,
    component: Component,
    radii: &[f64],
) -> Result<HarnackRatios, EstimateError> {
    let values = match component {
        Component::U => sol.u(),
        Component::V => sol.v(),
    };
    let center = match component {
        Component::U => sol.u0(),
        Component::V => sol.v0(),
    };

    let mut ball_records = Vec::with_capacity(radii.len());
    let mut annulus_records = Vec::with_capacity(radii.len());
    for &radius in radii {
        if !(radius > 0.0)
            || radius < sol.r_min() * (1.0 - GRID_SLACK)
            || 2.0 * radius > sol.r_max() * (1.0 + GRID_SLACK)
        {
            return Err(EstimateError::RangeError {
                what: "harnack window",
                needed: radius,
                lo: sol.r_min(),
                hi: sol.r_max() / 2.0,
            });
        }

        let ball = window_extrema(
            sol.r(),
            values,
            0.0,
            radius * (1.0 + GRID_SLACK),
            center.is_finite().then_some(center),
        );
        ball_records.push(ratio_record(radius, ball));

        let annulus = window_extrema(
            sol.r(),
            values,
            radius * (1.0 - GRID_SLACK),
            2.0 * radius * (1.0 + GRID_SLACK),
            None,
        );
        annulus_records.push(ratio_record(radius, annulus));
    }

    let label = |shape: &str| format!("harnack-{shape}-{}", component_name(component));
    Ok(HarnackRatios {
        ball: EstimateReport::from_records(label("ball"), ball_records, DEFAULT_RATIO_BOUND),
        annulus: EstimateReport::from_records(
            label("annulus"),
            annulus_records,
            DEFAULT_RATIO_BOUND,
        ),
    })
}

fn component_name(component: Component) -> &'static str {
    match component {
        Component::U => "u",
        Component::V => "v",
    }
}

fn window_extrema(
    r: &[f64],
    values: &[f64],
    lo: f64,
    hi: f64,
    center: Option<f64>,
) -> (f64, f64) {
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    if let Some(c) = center {
        sup = c;
        inf = c;
    }
    for (x, y) in r.iter().zip(values) {
        if *x >= lo && *x <= hi {
            sup = sup.max(*y);
            inf = inf.min(*y);
        }
    }
    (sup, inf)
}

fn ratio_record(radius: f64, (sup, inf): (f64, f64)) -> EstimateRecord {
    let constant = if sup == 0.0 && inf == 0.0 {
        1.0
    } else if inf <= 0.0 {
        f64::INFINITY
    } else {
        sup / inf
    };
    EstimateRecord {
        scale: radius,
        lhs: sup,
        rhs: inf,
        constant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use pqlab_exponents::{SystemKind, SystemParams};
    use pqlab_radial::{Problem, SolutionStatus};

    fn power_profile(theta: f64) -> RadialSolution {
        let params = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
            .expect("valid parameters");
        // Dyadic-aligned grid so annulus endpoints are sample points.
        let n = 10 * 16 + 1;
        let r: Vec<f64> = (0..n).map(|i| 2.0f64.powf(i as f64 / 16.0 - 6.0)).collect();
        let u: Vec<f64> = r.iter().map(|x| 3.0 * x.powf(-theta)).collect();
        let du: Vec<f64> = r
            .iter()
            .map(|x| -3.0 * theta * x.powf(-theta - 1.0))
            .collect();
        let v = vec![1.0; n];
        let dv = vec![0.0; n];
        RadialSolution::from_samples(
            Problem::System { params },
            r,
            u,
            v,
            du,
            dv,
            f64::INFINITY,
            1.0,
            SolutionStatus::Completed { r_max: 16.0 },
        )
        .expect("valid samples")
    }

    #[test]
    fn constant_component_has_unit_ratios() {
        let sol = power_profile(1.5);
        let ratios = harnack_ratios(&sol, Component::V, &[0.25, 0.5, 1.0]).expect("ratios");
        for report in [&ratios.ball, &ratios.annulus] {
            assert_eq!(report.verdict, Verdict::Bounded);
            for record in &report.records {
                assert!((record.constant - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn monotone_power_annulus_ratio_is_the_dyadic_power() {
        let theta = 1.5;
        let sol = power_profile(theta);
        let ratios = harnack_ratios(&sol, Component::U, &[0.25, 0.5, 1.0, 2.0]).expect("ratios");
        let exact = 2.0f64.powf(theta);
        for record in &ratios.annulus.records {
            assert!(
                (record.constant - exact).abs() < 1e-12 * exact,
                "ratio {} at scale {}",
                record.constant,
                record.scale
            );
        }
        assert_eq!(ratios.annulus.verdict, Verdict::Bounded);
    }

    #[test]
    fn singular_component_has_unbounded_ball_ratios() {
        // u ~ r^-theta with an infinite center value: ball ratios blow
        // up as the sampled window deepens.
        let sol = power_profile(1.5);
        let ratios = harnack_ratios(&sol, Component::U, &[0.25, 1.0, 2.0]).expect("ratios");
        assert!(ratios.ball.max_constant > 1e3);
    }

    #[test]
    fn out_of_range_radii_are_rejected() {
        let sol = power_profile(1.5);
        assert!(matches!(
            harnack_ratios(&sol, Component::U, &[100.0]),
            Err(EstimateError::RangeError { .. })
        ));
    }

    #[test]
    fn vanishing_infimum_reports_an_infinite_ratio() {
        let params = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Mixed)
            .expect("valid parameters");
        let r: Vec<f64> = (1..=100).map(|i| i as f64 / 100.0).collect();
        let u: Vec<f64> = r.to_vec();
        let du = vec![1.0; 100];
        let v = vec![1.0; 100];
        let dv = vec![0.0; 100];
        let sol = RadialSolution::from_samples(
            Problem::System { params },
            r,
            u,
            v,
            du,
            dv,
            0.0,
            1.0,
            SolutionStatus::Completed { r_max: 1.0 },
        )
        .expect("valid samples");
        let ratios = harnack_ratios(&sol, Component::U, &[0.3]).expect("ratios");
        // Center value u(0) = 0 forces an infinite ball ratio.
        assert!(ratios.ball.records[0].constant.is_infinite());
        assert_eq!(ratios.ball.verdict, Verdict::Unbounded);
    }
}
