//! Nonlinear potentials of radial densities and the minorization check.
//!
//! The potential of a density f over the ball B(0, rho) is
//!
//! ```text
//!   W(rho) = int_0^rho  ( t^p * mean_{B(0,t)} f )^(1/(p-1))  dt/t,
//!   mean_{B(0,t)} f = N t^(-N) int_0^t s^(N-1) f(s) ds,
//! ```
//!
//! computed here by integrating the pair [inner mass, potential] as an
//! ODE from a seed radius far below rho.  The seed uses a local power
//! fit of the density, which also powers the divergence screen: when
//! either the inner mass or the outer integral fails integrability the
//! potential is reported as +infinity rather than an error.
//!
//! The minorization check compares a solution's growth over dyadic
//! annuli against a proportionally truncated potential
//!
//! ```text
//!   W_theta(rho) = int_{theta*rho}^rho ( t^p * N t^(-N)
//!                    int_{theta*t}^t s^(N-1) f(s) ds )^(1/(p-1)) dt/t,
//! ```
//!
//! which stays finite on strongly singular densities and, for power-law
//! densities, scales in rho by an exact power — so the empirical
//! constant is exactly scale-free on exact power-pair solutions.

use crate::error::EstimateError;
use crate::origin::{limit_at_origin, OriginLimit};
use crate::quad::log_simpson;
use crate::report::{EstimateRecord, EstimateReport, DEFAULT_RATIO_BOUND};
use pqlab_radial::ode::{
    Control, Integrator, OdeSystem, RunOutcome, StepController, Tolerances,
};
use pqlab_radial::{MonotoneCubic, Problem, RadialSolution};

/// Seed radius for the potential ODE, as a fraction of rho.
const SEED_SHIFT: f64 = 60.0;
/// Probe radius for the local power fit, as a fraction of rho.
const PROBE_SHIFT: f64 = 40.0;
/// Potential value beyond which the integration reports divergence.
const POTENTIAL_CAP: f64 = 1e200;
/// Truncation fraction for the proportionally truncated potential.
const TRUNCATION: f64 = 0.125;
/// Panels per layer of the truncated potential's nested quadrature.
const TRUNCATED_PANELS: usize = 512;
/// Relative slack when matching sample radii against window endpoints.
const GRID_SLACK: f64 = 1e-12;

struct PotentialOde<'a, F> {
    n: f64,
    p: f64,
    density: &'a F,
}

impl<F: Fn(f64) -> f64> OdeSystem<2> for PotentialOde<'_, F> {
    fn rhs(&self, t: f64, y: &[f64; 2], dydt: &mut [f64; 2]) {
        dydt[0] = t.powf(self.n - 1.0) * (self.density)(t);
        let mean_scaled = (self.n * y[0].max(0.0)) * t.powf(self.p - self.n);
        dydt[1] = mean_scaled.powf(1.0 / (self.p - 1.0)) / t;
    }
}

fn validate_positive(name: &'static str, value: f64) -> Result<(), EstimateError> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(EstimateError::InvalidParameter { name, value });
    }
    Ok(())
}

/// Potential of the radial density `f` over B(0, rho), to relative
/// accuracy about `quad_tol`.
///
/// Divergence (a density too singular for the inner mass or the outer
/// integral) is reported as `Ok(f64::INFINITY)`, not as an error.
///
/// # Errors
///
/// [`EstimateError::InvalidParameter`] when `p <= 1`, `rho` or
/// `quad_tol` is not positive, or the density is negative or non-finite
/// at the probe radii; [`EstimateError::Quadrature`] when the
/// integrator stalls.
pub fn wolff_potential(
    f: impl Fn(f64) -> f64,
    p: f64,
    n_dim: u32,
    rho: f64,
    quad_tol: f64,
) -> Result<f64, EstimateError> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "p", value: p });
    }
    validate_positive("rho", rho)?;
    validate_positive("quad_tol", quad_tol)?;
    let n = f64::from(n_dim);

    // Local power fit sigma of the density near the origin.
    let t1 = rho * (-PROBE_SHIFT).exp2();
    let t2 = 2.0 * t1;
    let (f1, f2) = (f(t1), f(t2));
    for value in [f1, f2] {
        if !value.is_finite() || value < 0.0 {
            return Err(EstimateError::InvalidParameter {
                name: "density",
                value,
            });
        }
    }
    let sigma = if f1 > 0.0 && f2 > 0.0 {
        (f2 / f1).log2()
    } else {
        0.0
    };

    // Integrability screens: inner mass needs N + sigma > 0, the outer
    // integral needs (p + sigma)/(p - 1) > 0.
    if f1 > 0.0 && (n + sigma <= 0.0 || p + sigma <= 0.0) {
        return Ok(f64::INFINITY);
    }

    // Seed the pair [inner mass, potential] from the local power fit.
    let t0 = rho * (-SEED_SHIFT).exp2();
    let f0 = f(t0).max(0.0);
    let mut y = [0.0f64; 2];
    if f0 > 0.0 {
        y[0] = f0 * t0.powf(n) / (n + sigma);
        let kappa = (p + sigma) / (p - 1.0);
        let integrand = (n * y[0] * t0.powf(p - n)).powf(1.0 / (p - 1.0)) / t0;
        y[1] = integrand * t0 / kappa;
    }

    let system = PotentialOde { n, p, density: &f };
    let tol = Tolerances::uniform((quad_tol * 1e-2).clamp(1e-13, 1e-4), 1e-300);
    let mut integrator = Integrator::new(tol, StepController::default());
    let mut capped = false;
    let outcome = integrator.run(&system, t0, y, rho, |step| {
        if step.y1[1] > POTENTIAL_CAP {
            capped = true;
            Control::Halt
        } else {
            Control::Continue
        }
    });
    match outcome {
        RunOutcome::ReachedEnd { y, .. } => Ok(y[1]),
        RunOutcome::Halted { .. } if capped => Ok(f64::INFINITY),
        RunOutcome::Halted { .. } => Err(EstimateError::Quadrature { outcome: "halted" }),
        RunOutcome::Underflow { .. } => Err(EstimateError::Quadrature {
            outcome: "step size underflow",
        }),
        RunOutcome::StepBudgetExhausted { .. } => Err(EstimateError::Quadrature {
            outcome: "step budget exhausted",
        }),
    }
}

/// Proportionally truncated potential over the annulus
/// [`theta * rho`, `rho`], with the inner mass likewise truncated to
/// [`theta * t`, `t`].
///
/// Unlike the full potential this is finite for arbitrarily singular
/// power densities, and for `f(s) = c s^sigma` it equals an exact
/// multiple of `rho^((p+sigma)/(p-1))` — including through the fixed
/// quadrature rule, whose nodes scale with the interval.
///
/// # Errors
///
/// [`EstimateError::InvalidParameter`] on `p <= 1`, nonpositive `rho`,
/// or `theta` outside (0, 1).
pub fn truncated_wolff_potential(
    f: impl Fn(f64) -> f64,
    p: f64,
    n_dim: u32,
    rho: f64,
    theta: f64,
) -> Result<f64, EstimateError> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "p", value: p });
    }
    validate_positive("rho", rho)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(EstimateError::InvalidParameter {
            name: "theta",
            value: theta,
        });
    }
    let n = f64::from(n_dim);
    let outer = |t: f64| {
        let inner = log_simpson(|s| s.powf(n) * f(s), theta * t, t, TRUNCATED_PANELS);
        (n * inner.max(0.0) * t.powf(p - n)).powf(1.0 / (p - 1.0))
    };
    Ok(log_simpson(outer, theta * rho, rho, TRUNCATED_PANELS))
}

/// Check the potential minorization on a solution: across the given
/// scales, record the constant
///
/// ```text
///   C(rho) = (growth of u near scale rho) / W_theta(rho)
/// ```
///
/// where the density is the absorption term `|x|^a v^delta` taken from
/// the solution's own second component, and the growth numerator is
/// `sup u - lim u` over B(0, 2 rho) for profiles with a finite limit at
/// the origin, or `sup u` over the annulus [rho, 2 rho] for singular
/// profiles (where subtracting the limit is vacuous).
///
/// # Errors
///
/// [`EstimateError::ScalarProblem`] for scalar profiles;
/// [`EstimateError::InvalidParameter`] when the first equation carries
/// a source sign (the density would be negative);
/// [`EstimateError::RangeError`] when a scale does not fit the sampled
/// range; [`EstimateError::ZeroPotential`] when the potential vanishes
/// against a nonzero numerator.
pub fn wolff_bound_check(
    sol: &RadialSolution,
    rho_list: &[f64],
) -> Result<EstimateReport, EstimateError> {
    let params = match sol.problem() {
        Problem::System { params } => *params,
        Problem::Scalar { .. } => return Err(EstimateError::ScalarProblem),
    };
    if params.eps1() > 0.0 {
        return Err(EstimateError::InvalidParameter {
            name: "eps1",
            value: params.eps1(),
        });
    }

    // Positive-v prefix of the samples; extinction tails drop out.
    let m = sol.v().iter().position(|&v| !(v > 0.0)).unwrap_or(sol.len());
    let r = &sol.r()[..m];
    let u = &sol.u()[..m];

    // Density from the sampled second component, interpolated in
    // log-log space (exact for pure powers, hence the exact
    // scale-freeness on power pairs).
    let density: Box<dyn Fn(f64) -> f64> = if m >= 2 {
        let ln_r: Vec<f64> = r.iter().map(|x| x.ln()).collect();
        let ln_v: Vec<f64> = sol.v()[..m].iter().map(|x| x.ln()).collect();
        let (lo_ln, hi_ln) = (ln_r[0], ln_r[m - 1]);
        let interp = MonotoneCubic::new(&ln_r, &ln_v)?;
        let (a, delta) = (params.a(), params.delta());
        Box::new(move |s: f64| {
            // Quadrature nodes can graze the window endpoints by
            // rounding; clamp instead of failing there.
            let x = s.ln().clamp(lo_ln, hi_ln);
            let ln_vs = interp.eval(x).unwrap_or(f64::NEG_INFINITY);
            s.powf(a) * (delta * ln_vs).exp()
        })
    } else {
        Box::new(|_| 0.0)
    };

    let origin = if m >= 4 {
        limit_at_origin(r, u)
    } else {
        limit_at_origin(sol.r(), sol.u())
    };

    let mut records = Vec::with_capacity(rho_list.len());
    for &rho in rho_list {
        validate_positive("rho", rho)?;
        // The potential's inner integral reaches down to theta^2 * rho
        // and the growth numerator reaches up to 2 * rho.
        let lo_needed = rho * TRUNCATION * TRUNCATION;
        let hi_needed = 2.0 * rho;
        let (r_lo, r_hi) = (sol.r_min(), if m > 0 { r[m - 1] } else { sol.r_max() });
        if lo_needed < r_lo * (1.0 - GRID_SLACK) || hi_needed > r_hi * (1.0 + GRID_SLACK) {
            return Err(EstimateError::RangeError {
                what: "minorization window",
                needed: if lo_needed < r_lo { lo_needed } else { hi_needed },
                lo: r_lo,
                hi: r_hi,
            });
        }

        let numerator = match origin {
            OriginLimit::Finite(limit) => {
                let sup = sol
                    .r()
                    .iter()
                    .zip(sol.u())
                    .filter(|(x, _)| **x <= 2.0 * rho * (1.0 + GRID_SLACK))
                    .map(|(_, y)| *y)
                    .fold(f64::NEG_INFINITY, f64::max);
                (sup - limit).max(0.0)
            }
            // The numerator tracks growth of the first component, so it
            // reads the full samples, not just the positive-v prefix.
            _ => sol
                .r()
                .iter()
                .zip(sol.u())
                .filter(|(x, _)| {
                    **x >= rho * (1.0 - GRID_SLACK) && **x <= 2.0 * rho * (1.0 + GRID_SLACK)
                })
                .map(|(_, y)| *y)
                .fold(0.0f64, f64::max),
        };

        let potential =
            truncated_wolff_potential(&density, params.p(), params.n_dim(), rho, TRUNCATION)?;
        let constant = if potential > 0.0 {
            numerator / potential
        } else if numerator > 0.0 {
            return Err(EstimateError::ZeroPotential { rho });
        } else {
            0.0
        };
        records.push(EstimateRecord {
            scale: rho,
            lhs: numerator,
            rhs: potential,
            constant,
        });
    }
    Ok(EstimateReport::from_records(
        "wolff-minorization",
        records,
        DEFAULT_RATIO_BOUND,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pqlab_exponents::{SystemKind, SystemParams};
    use pqlab_radial::SolutionStatus;

    const QUAD_TOL: f64 = 1e-10;
    const CLOSED_FORM_GATE: f64 = 1e-8;

    #[test]
    fn unit_density_quadratic_case() {
        let value = wolff_potential(|_| 1.0, 2.0, 3, 1.0, QUAD_TOL).expect("potential");
        assert!((value - 0.5).abs() < CLOSED_FORM_GATE, "value {value}");
    }

    #[test]
    fn unit_density_general_exponent() {
        let (p, rho) = (2.7, 1.3);
        let value = wolff_potential(|_| 1.0, p, 4, rho, QUAD_TOL).expect("potential");
        let exact = (p - 1.0) / p * rho.powf(p / (p - 1.0));
        assert!(
            (value - exact).abs() < CLOSED_FORM_GATE * exact.max(1.0),
            "value {value}, exact {exact}"
        );
    }

    #[test]
    fn power_density_closed_form() {
        let (p, n, sigma, rho) = (2.5, 3u32, 1.5, 0.9);
        let value = wolff_potential(|s: f64| s.powf(sigma), p, n, rho, QUAD_TOL)
            .expect("potential");
        let nf = f64::from(n);
        let exact = (nf / (nf + sigma)).powf(1.0 / (p - 1.0)) * (p - 1.0) / (p + sigma)
            * rho.powf((p + sigma) / (p - 1.0));
        assert!(
            (value - exact).abs() < CLOSED_FORM_GATE * exact.max(1.0),
            "value {value}, exact {exact}"
        );
    }

    #[test]
    fn negative_power_density_still_matches() {
        let (p, n, sigma, rho) = (2.0, 3u32, -1.2, 1.0);
        let value = wolff_potential(|s: f64| s.powf(sigma), p, n, rho, QUAD_TOL)
            .expect("potential");
        let nf = f64::from(n);
        let exact = (nf / (nf + sigma)).powf(1.0 / (p - 1.0)) * (p - 1.0) / (p + sigma)
            * rho.powf((p + sigma) / (p - 1.0));
        assert!(
            (value - exact).abs() < CLOSED_FORM_GATE * exact.max(1.0),
            "value {value}, exact {exact}"
        );
    }

    #[test]
    fn too_singular_densities_diverge() {
        // Outer failure: p + sigma <= 0.
        let outer = wolff_potential(|s: f64| s.powf(-2.0), 2.0, 3, 1.0, QUAD_TOL)
            .expect("reported, not thrown");
        assert!(outer.is_infinite());
        // Inner failure: N + sigma <= 0.
        let inner = wolff_potential(|s: f64| s.powf(-3.2), 2.0, 3, 1.0, QUAD_TOL)
            .expect("reported, not thrown");
        assert!(inner.is_infinite());
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        assert!(matches!(
            wolff_potential(|_| 1.0, 1.0, 3, 1.0, QUAD_TOL),
            Err(EstimateError::InvalidParameter { name: "p", .. })
        ));
        assert!(matches!(
            wolff_potential(|_| -1.0, 2.0, 3, 1.0, QUAD_TOL),
            Err(EstimateError::InvalidParameter { name: "density", .. })
        ));
    }

    #[test]
    fn truncated_potential_scales_exactly_on_powers() {
        let f = |s: f64| 3.0 * s.powf(0.7);
        let (p, n) = (2.2, 4u32);
        let w1 = truncated_wolff_potential(f, p, n, 0.5, TRUNCATION).expect("potential");
        let w2 = truncated_wolff_potential(f, p, n, 1.0, TRUNCATION).expect("potential");
        let exact = 2.0f64.powf((p + 0.7) / (p - 1.0));
        assert!(
            (w2 / w1 - exact).abs() < 1e-12 * exact,
            "ratio {}, exact {exact}",
            w2 / w1
        );
    }

    fn flagship() -> SystemParams {
        SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
            .expect("valid parameters")
    }

    fn power_pair_profile(params: &SystemParams) -> RadialSolution {
        // Exact particular pair u = v = 2 r^-2 on a dyadic-aligned grid.
        let n = 12 * 32 + 1;
        let r: Vec<f64> = (0..n).map(|i| 2.0f64.powf(i as f64 / 32.0 - 9.0)).collect();
        let u: Vec<f64> = r.iter().map(|x| 2.0 * x.powi(-2)).collect();
        let du: Vec<f64> = r.iter().map(|x| -4.0 * x.powi(-3)).collect();
        RadialSolution::from_samples(
            Problem::System { params: *params },
            r.clone(),
            u.clone(),
            u,
            du.clone(),
            du,
            f64::INFINITY,
            f64::INFINITY,
            SolutionStatus::Completed { r_max: 8.0 },
        )
        .expect("valid samples")
    }

    #[test]
    fn power_pair_constant_is_exactly_scale_free() {
        let params = flagship();
        let sol = power_pair_profile(&params);
        let rhos = [0.25, 0.5, 1.0, 2.0];
        let report = wolff_bound_check(&sol, &rhos).expect("check runs");
        assert_eq!(report.records.len(), 4);
        assert!(report.max_constant > 0.0);
        assert!(
            report.ratio() - 1.0 < 1e-9,
            "scale spread {}",
            report.ratio() - 1.0
        );
    }

    #[test]
    fn zero_profile_is_inconclusive() {
        let params = flagship();
        let r: Vec<f64> = (0..400).map(|i| 1e-4 * 1.03f64.powi(i)).collect();
        let z = vec![0.0; r.len()];
        let sol = RadialSolution::from_samples(
            Problem::System { params },
            r,
            z.clone(),
            z.clone(),
            z.clone(),
            z,
            0.0,
            0.0,
            SolutionStatus::Completed { r_max: 1.0 },
        )
        .expect("valid samples");
        let report = wolff_bound_check(&sol, &[0.2]).expect("degenerate check runs");
        assert_eq!(report.verdict, crate::report::Verdict::Inconclusive);
        assert_eq!(report.records[0].constant, 0.0);
    }

    #[test]
    fn vanishing_potential_with_growth_is_an_error() {
        let params = flagship();
        let r: Vec<f64> = (0..400).map(|i| 1e-4 * 1.03f64.powi(i)).collect();
        let u: Vec<f64> = r.iter().map(|x| x.powi(-1)).collect();
        let du: Vec<f64> = r.iter().map(|x| -x.powi(-2)).collect();
        let z = vec![0.0; r.len()];
        let sol = RadialSolution::from_samples(
            Problem::System { params },
            r,
            u,
            z.clone(),
            du,
            z,
            f64::INFINITY,
            0.0,
            SolutionStatus::Completed { r_max: 1.0 },
        )
        .expect("valid samples");
        assert!(matches!(
            wolff_bound_check(&sol, &[0.2]),
            Err(EstimateError::ZeroPotential { .. })
        ));
    }

    #[test]
    fn scales_outside_the_samples_are_rejected() {
        let params = flagship();
        let sol = power_pair_profile(&params);
        assert!(matches!(
            wolff_bound_check(&sol, &[100.0]),
            Err(EstimateError::RangeError { .. })
        ));
    }
}
