//! Cutoff-weighted integral estimate on radial profiles.
//!
//! The estimate compares the phi-weighted mean of the absorption
//! density f = |x|^a v^delta against (eps rho)^(-p) times a power of
//! the phi-weighted mean of u^ell, with phi a cutoff raised to a proof
//! exponent.  The experiment computes both sides by radial quadrature
//! and records the empirical constant across dyadic scales.
//!
//! Cutoff geometry is chosen where the profile is self-similar, since
//! only there can the constant be scale-stable:
//!
//! * profiles singular at the origin get annular cutoffs anchored at 0
//!   (rise over [rho(1-eps), rho], 1 on [rho, 2 rho], fall over
//!   [2 rho, 2 rho(1+eps)]), matching the power-law similarity of the
//!   singularity;
//! * blow-up profiles get the same window geometry in the boundary
//!   distance d = R - r (R the blow-up radius), matching the universal
//!   similarity of the blow-up asymptotics;
//! * everything else (bounded profiles on a finite domain) gets plain
//!   balls at the origin: 1 up to rho, quintic fall over
//!   [rho, rho(1+eps)].  No stability is promised there — the constant
//!   of a smooth bounded profile scales like rho^p by inspection.

use crate::error::EstimateError;
use crate::origin::{limit_at_origin, OriginLimit};
use crate::quad::simpson;
use crate::report::{EstimateRecord, EstimateReport};
use pqlab_radial::{Problem, ProfileInterpolant, RadialSolution, SolutionStatus};

/// Declared stability bound: constants within a factor 2 across scales.
pub const CACCIOPPOLI_RATIO_BOUND: f64 = 2.0;

/// Number of dyadic scales recorded per experiment.
const SCALES: usize = 4;
/// Simpson panels per cutoff region.
const REGION_PANELS: usize = 256;
/// Relative slack when matching windows against the sampled range.
const GRID_SLACK: f64 = 1e-12;

/// One scale of the estimate, decomposed so the explicit
/// `(eps rho)^(-p)` factor is visible: `rhs = eps_factor * mean_term`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaccioppoliParts {
    /// Scale parameter rho.
    pub scale: f64,
    /// phi-weighted mean of the absorption density.
    pub lhs: f64,
    /// (phi-weighted mean of u^ell)^((p-1)/ell).
    pub mean_term: f64,
    /// The explicit factor (eps * rho)^(-p).
    pub eps_factor: f64,
    /// eps_factor * mean_term.
    pub rhs: f64,
    /// lhs / rhs (0 when both sides vanish).
    pub constant: f64,
}

/// Exponent lambda = p * theta' of the cutoff, from the proof's choice
/// theta = ell / (alpha + p - 1) with alpha = min(1, ell + 1 - p)/2.
fn cutoff_exponent(p: f64, ell: f64) -> f64 {
    let alpha = 1.0f64.min(ell + 1.0 - p) / 2.0;
    let theta = ell / (alpha + p - 1.0);
    p * theta / (theta - 1.0)
}

/// Quintic smoothstep: 0 at 0, 1 at 1, with two flat derivatives at
/// both ends, so |grad of the cutoff| <= 1.875/(eps rho) < 2.5/(eps rho).
fn smoothstep(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
}

struct Cutoff {
    /// Region boundaries: integration runs piecewise between these to
    /// keep Simpson's order through the C^2 joints.
    regions: Vec<(f64, f64)>,
    rise: Option<(f64, f64)>,
    fall: (f64, f64),
    lambda: f64,
}

impl Cutoff {
    fn xi(&self, r: f64) -> f64 {
        if let Some((a, b)) = self.rise {
            if r < a {
                return 0.0;
            }
            if r < b {
                return smoothstep((r - a) / (b - a));
            }
        }
        let (a, b) = self.fall;
        if r <= a {
            1.0
        } else if r < b {
            smoothstep((b - r) / (b - a))
        } else {
            0.0
        }
    }

    fn phi(&self, r: f64) -> f64 {
        self.xi(r).powf(self.lambda)
    }
}

/// Compute one scale of the estimate, exposing the factorization.
///
/// For blow-up profiles `rho` is measured in the boundary distance
/// `R - r` from the blow-up radius; otherwise it is the distance from
/// the origin.
///
/// # Errors
///
/// [`EstimateError::ScalarProblem`] for scalar profiles;
/// [`EstimateError::InvalidParameter`] when `ell <= p - 1` or `eps` is
/// outside (0, 1/2]; [`EstimateError::RangeError`] when the cutoff
/// support leaves the sampled range.
pub fn caccioppoli_parts(
    sol: &RadialSolution,
    ell: f64,
    rho: f64,
    eps: f64,
) -> Result<CaccioppoliParts, EstimateError> {
    let params = match sol.problem() {
        Problem::System { params } => *params,
        Problem::Scalar { .. } => return Err(EstimateError::ScalarProblem),
    };
    let p = params.p();
    if !(ell > p - 1.0) || !ell.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "ell", value: ell });
    }
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(EstimateError::InvalidParameter { name: "eps", value: eps });
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(EstimateError::InvalidParameter { name: "rho", value: rho });
    }

    let lambda = cutoff_exponent(p, ell);
    let cutoff = match sol.status() {
        SolutionStatus::BlowUp { r_lo, r_hi } => {
            // Window anchored at the blow-up radius, written in the
            // boundary distance d = R - r: quintic rise over
            // d in [2 rho, (2 + eps) rho], plateau on [rho, 2 rho],
            // quintic fall over [(1 - eps) rho, rho].  The rho-dyadic
            // family is self-similar toward the boundary, where the
            // profile follows its universal blow-up power law.
            let r_star = 0.5 * (r_lo + r_hi);
            let support_start = r_star - rho * (2.0 + eps);
            let support_end = r_star - rho * (1.0 - eps);
            if support_start < sol.r_min() * (1.0 - GRID_SLACK)
                || support_end > sol.r_max() * (1.0 + GRID_SLACK)
            {
                return Err(EstimateError::RangeError {
                    what: "boundary cutoff support",
                    needed: if support_start < sol.r_min() {
                        support_start
                    } else {
                        support_end
                    },
                    lo: sol.r_min(),
                    hi: sol.r_max(),
                });
            }
            Cutoff {
                regions: vec![
                    (support_start, r_star - 2.0 * rho),
                    (r_star - 2.0 * rho, r_star - rho),
                    (r_star - rho, support_end),
                ],
                rise: Some((support_start, r_star - 2.0 * rho)),
                fall: (r_star - rho, support_end),
                lambda,
            }
        }
        _ if matches!(limit_at_origin(sol.r(), sol.u()), OriginLimit::Finite(_)) => {
            // Ball: 1 from the inner end of the samples up to rho.
            let support_end = rho * (1.0 + eps);
            if support_end > sol.r_max() * (1.0 + GRID_SLACK) || rho < sol.r_min() {
                return Err(EstimateError::RangeError {
                    what: "ball cutoff support",
                    needed: support_end,
                    lo: sol.r_min(),
                    hi: sol.r_max(),
                });
            }
            Cutoff {
                regions: vec![(sol.r_min(), rho), (rho, support_end)],
                rise: None,
                fall: (rho, support_end),
                lambda,
            }
        }
        _ => {
            // Annulus: rise to 1 at rho, hold through 2 rho, fall after.
            let support_start = rho * (1.0 - eps);
            let support_end = 2.0 * rho * (1.0 + eps);
            if support_start < sol.r_min() * (1.0 - GRID_SLACK)
                || support_end > sol.r_max() * (1.0 + GRID_SLACK)
            {
                return Err(EstimateError::RangeError {
                    what: "annulus cutoff support",
                    needed: if support_start < sol.r_min() {
                        support_start
                    } else {
                        support_end
                    },
                    lo: sol.r_min(),
                    hi: sol.r_max(),
                });
            }
            Cutoff {
                regions: vec![
                    (support_start, rho),
                    (rho, 2.0 * rho),
                    (2.0 * rho, support_end),
                ],
                rise: Some((support_start, rho)),
                fall: (2.0 * rho, support_end),
                lambda,
            }
        }
    };

    let interp = ProfileInterpolant::new(sol)?;
    let (r_lo, r_hi) = (sol.r_min(), sol.r_max());
    let sample = |r: f64| -> (f64, f64) {
        let (u, v, _, _) = interp
            .eval(r.clamp(r_lo, r_hi))
            .expect("clamped radius is inside the sampled range");
        (u, v)
    };
    let nm1 = f64::from(params.n_dim()) - 1.0;
    let (a, delta) = (params.a(), params.delta());
    let f_sign = -params.eps1();

    let mut i_phi = 0.0;
    let mut i_f = 0.0;
    let mut i_u = 0.0;
    for &(lo, hi) in &cutoff.regions {
        i_phi += simpson(|r| cutoff.phi(r) * r.powf(nm1), lo, hi, REGION_PANELS);
        i_f += simpson(
            |r| {
                let (_, v) = sample(r);
                f_sign * r.powf(a) * v.powf(delta) * cutoff.phi(r) * r.powf(nm1)
            },
            lo,
            hi,
            REGION_PANELS,
        );
        i_u += simpson(
            |r| {
                let (u, _) = sample(r);
                u.powf(ell) * cutoff.phi(r) * r.powf(nm1)
            },
            lo,
            hi,
            REGION_PANELS,
        );
    }

    let lhs = i_f / i_phi;
    let mean_term = (i_u / i_phi).powf((p - 1.0) / ell);
    let eps_factor = (eps * rho).powf(-p);
    let rhs = eps_factor * mean_term;
    let constant = if lhs == 0.0 && rhs == 0.0 {
        0.0
    } else {
        lhs / rhs
    };
    Ok(CaccioppoliParts {
        scale: rho,
        lhs,
        mean_term,
        eps_factor,
        rhs,
        constant,
    })
}

/// Record the empirical constant across descending dyadic scales
/// rho, rho/2, rho/4, rho/8.
///
/// # Errors
///
/// As for [`caccioppoli_parts`].
pub fn caccioppoli_ratio(
    sol: &RadialSolution,
    ell: f64,
    rho: f64,
    eps: f64,
) -> Result<EstimateReport, EstimateError> {
    let mut records = Vec::with_capacity(SCALES);
    for j in 0..SCALES {
        let parts = caccioppoli_parts(sol, ell, rho * 0.5f64.powi(j as i32), eps)?;
        records.push(EstimateRecord {
            scale: parts.scale,
            lhs: parts.lhs,
            rhs: parts.rhs,
            constant: parts.constant,
        });
    }
    Ok(EstimateReport::from_records(
        "caccioppoli-ratio",
        records,
        CACCIOPPOLI_RATIO_BOUND,
    ))
}
