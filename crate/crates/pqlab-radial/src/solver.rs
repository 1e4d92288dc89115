//! Radial integration of the coupled system and the scalar equation.
//!
//! Both problems are integrated in their divergence (flux) form.  With
//! `m_u = r^(N-1) |u'|^(p-2) u'` the system reads
//!
//! ```text
//!     m_u' = -ε₁ r^(N-1+a) v^δ,      u' = sign(m_u) (|m_u| / r^(N-1))^(1/(p-1)),
//!     m_v' = -ε₂ r^(N-1+b) u^μ,      v' = sign(m_v) (|m_v| / r^(N-1))^(1/(q-1)),
//! ```
//!
//! which stays regular where `u' = 0` (the origin) because the degenerate
//! factor `|u'|^(p-2)` never appears alone.  Integration runs in `s = ln r`
//! from a series-startup radius, so the vanishing weight at the origin and
//! the many-decade spans of singular studies are handled uniformly.  All
//! powers inside the right-hand side are evaluated as `exp(clamped log)`, so
//! near-blow-up states saturate instead of overflowing to NaN.

use pqlab_exponents::{SystemKind, SystemParams};

use crate::error::RadialError;
use crate::ode::{
    Control, Integrator, OdeSystem, RunOutcome, StepController, StepRecord, Tolerances,
};
use crate::problem::{Problem, ScalarParams};
use crate::solution::{Component, RadialSolution, SolutionStatus};

/// A profile is declared blown up once it exceeds this value.
pub const BLOWUP_THRESHOLD: f64 = 1e12;
/// Integration halts (for bracket estimation) once any state magnitude
/// passes this cap: far below overflow, far above the threshold.
const VALUE_CAP: f64 = 1e250;
/// Output density cap: accepted steps never span more than this in `ln r`.
const MAX_LOG_STEP: f64 = 2e-3;
/// First sample at `1e-8 * min(1, r_max)`, shrunk further if needed.
const STARTUP_FRACTION: f64 = 1e-8;
/// The series corrections at the startup radius must stay below this
/// fraction of the initial data scale.  Kept well below the documented
/// `1e-8` bound of `series_startup` so the small flux offset inherited from
/// the startup approximation stays invisible to the residual oracle.
const STARTUP_REL_CORRECTION: f64 = 1e-10;
const MAX_STARTUP_SHRINKS: u32 = 40;
/// Steps in `ln r` below this floor are unresolvable; hitting it with large
/// profile values means the blow-up radius is O(1e-13)-close in `ln r`.
const H_FLOOR: f64 = 1e-13;
/// Cap on exponents fed to `exp` inside the right-hand side.
pub(crate) const EXP_CAP: f64 = 700.0;
/// A decreasing watched component below `1e-9 * data scale` counts as
/// having reached zero (extinction).
const EXTINCTION_REL_FLOOR: f64 = 1e-9;
/// Rounds of domain extension (in `ln r`) while chasing a blow-up asymptote
/// past the requested `r_max`.
const EXTENSION_SPAN: f64 = 80.0;
const MAX_EXTENSIONS: u32 = 12;
/// Grid size of the shortcut zero solution.
const ZERO_SOLUTION_SAMPLES: usize = 200;

/// `u' = sign(m) (|m| / r^(N-1))^(1/(p-1))` via logs; `0` at `m = 0`.
fn slope_from_flux(m: f64, s: f64, n: f64, p: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let ln = (m.abs().ln() - (n - 1.0) * s) / (p - 1.0);
    m.signum() * ln.min(EXP_CAP).exp()
}

/// `du/ds = r u'` via logs; `0` at `m = 0`.
fn dlog_slope(m: f64, s: f64, n: f64, p: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let ln = s + (m.abs().ln() - (n - 1.0) * s) / (p - 1.0);
    m.signum() * ln.min(EXP_CAP).exp()
}

/// `sign * r^lead * base^power` via logs; `0` when `base <= 0` (profiles are
/// clamped at zero inside forcings).
fn forcing_term(sign: f64, s: f64, lead: f64, base: f64, power: f64) -> f64 {
    if base <= 0.0 || sign == 0.0 {
        return 0.0;
    }
    sign * (lead * s + power * base.ln()).min(EXP_CAP).exp()
}

/// Flux form of the coupled system; state `[u, v, m_u, m_v]` over `s = ln r`.
struct SystemFlux {
    n: f64,
    p: f64,
    q: f64,
    delta: f64,
    mu: f64,
    a: f64,
    b: f64,
    eps1: f64,
    eps2: f64,
}

impl SystemFlux {
    fn new(params: &SystemParams) -> Self {
        SystemFlux {
            n: params.n(),
            p: params.p(),
            q: params.q(),
            delta: params.delta(),
            mu: params.mu(),
            a: params.a(),
            b: params.b(),
            eps1: params.eps1(),
            eps2: params.eps2(),
        }
    }
}

impl OdeSystem<4> for SystemFlux {
    fn rhs(&self, s: f64, y: &[f64; 4], dydt: &mut [f64; 4]) {
        dydt[0] = dlog_slope(y[2], s, self.n, self.p);
        dydt[1] = dlog_slope(y[3], s, self.n, self.q);
        // dm/ds = r m' with m_u' = -eps1 r^(N-1+a) v^delta.
        dydt[2] = forcing_term(-self.eps1, s, self.n + self.a, y[1], self.delta);
        dydt[3] = forcing_term(-self.eps2, s, self.n + self.b, y[0], self.mu);
    }
}

/// Flux form of the scalar equation `Δ_p u = c r^σ u^Q`; state `[u, m]`.
struct ScalarFlux {
    n: f64,
    p: f64,
    big_q: f64,
    c: f64,
    sigma: f64,
}

impl ScalarFlux {
    fn new(sc: &ScalarParams) -> Self {
        ScalarFlux { n: sc.n(), p: sc.p(), big_q: sc.big_q(), c: sc.c(), sigma: sc.sigma() }
    }
}

impl OdeSystem<2> for ScalarFlux {
    fn rhs(&self, s: f64, y: &[f64; 2], dydt: &mut [f64; 2]) {
        dydt[0] = dlog_slope(y[1], s, self.n, self.p);
        dydt[1] = forcing_term(self.c, s, self.n + self.sigma, y[0], self.big_q);
    }
}

/// Leading-order startup data for one component: given the constant forcing
/// level `F = base^power` of the partner profile, the flux integral gives
///
/// ```text
///     m(r)  = -eps * F r^(N+w) / (N+w),
///     du(r) = -eps (F/(N+w))^(1/(p-1)) r^((1+w)/(p-1)),
///     u(r)  = u0 - eps (p-1)/(p+w) (F/(N+w))^(1/(p-1)) r^((p+w)/(p-1)).
/// ```
struct SeriesLeg {
    /// Correction magnitude added to the initial value.
    correction: f64,
    /// Signed derivative at the startup radius.
    slope: f64,
    /// Signed flux at the startup radius.
    flux: f64,
}

fn series_leg(eps: f64, n: f64, p: f64, w: f64, base: f64, power: f64, r: f64) -> SeriesLeg {
    if base <= 0.0 {
        return SeriesLeg { correction: 0.0, slope: 0.0, flux: 0.0 };
    }
    let ln_f = power * base.ln();
    let ln_coeff = (ln_f - (n + w).ln()) / (p - 1.0);
    let slope_mag = (ln_coeff + (1.0 + w) / (p - 1.0) * r.ln()).exp();
    let corr_mag = (p - 1.0) / (p + w) * slope_mag * r;
    let flux_mag = (ln_f + (n + w) * r.ln()).exp() / (n + w);
    SeriesLeg { correction: -eps * corr_mag, slope: -eps * slope_mag, flux: -eps * flux_mag }
}

/// Series startup for the coupled system: profile values, derivatives and
/// fluxes at `r_start`, exact to leading order in the flux integral.
///
/// The caller is responsible for choosing `r_start` small enough that the
/// corrections are negligible (`solve_regular` shrinks until they fall below
/// `1e-8` of the data scale).  Errors with `DegenerateStart` when
/// `u0 = v0 = 0` and validates `r_start`.
pub fn series_startup(
    params: &SystemParams,
    u0: f64,
    v0: f64,
    r_start: f64,
) -> Result<(f64, f64, f64, f64), RadialError> {
    validate_initial("u0", u0)?;
    validate_initial("v0", v0)?;
    if !(r_start > 0.0) || !r_start.is_finite() {
        return Err(RadialError::InvalidStartRadius { value: r_start });
    }
    if u0 == 0.0 && v0 == 0.0 {
        return Err(RadialError::DegenerateStart);
    }
    let u_leg = series_leg(params.eps1(), params.n(), params.p(), params.a(), v0, params.delta(), r_start);
    let v_leg = series_leg(params.eps2(), params.n(), params.q(), params.b(), u0, params.mu(), r_start);
    Ok((u0 + u_leg.correction, v0 + v_leg.correction, u_leg.slope, v_leg.slope))
}

fn validate_initial(name: &'static str, value: f64) -> Result<(), RadialError> {
    if !value.is_finite() || value < 0.0 {
        return Err(RadialError::InvalidInitialData { name, value });
    }
    Ok(())
}

fn validate_domain(r_max: f64, tol: f64) -> Result<(), RadialError> {
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(RadialError::InvalidRadius { value: r_max });
    }
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(RadialError::InvalidTolerance { tol });
    }
    Ok(())
}

/// Shrink the startup radius until all series corrections are below
/// `STARTUP_REL_CORRECTION` of the data scale.
fn startup_radius(corr_at: impl Fn(f64) -> f64, scale: f64, r_max: f64) -> Result<f64, RadialError> {
    let mut r = STARTUP_FRACTION * r_max.min(1.0);
    for _ in 0..MAX_STARTUP_SHRINKS {
        if corr_at(r) <= STARTUP_REL_CORRECTION * scale {
            return Ok(r);
        }
        r *= 0.1;
    }
    Err(RadialError::StepFailure { radius: r })
}

/// The zero solution on a log grid (both initial values zero).
fn zero_solution(problem: Problem, r_max: f64) -> RadialSolution {
    let r_start = STARTUP_FRACTION * r_max.min(1.0);
    let ratio = (r_max / r_start).powf(1.0 / (ZERO_SOLUTION_SAMPLES - 1) as f64);
    let r: Vec<f64> = (0..ZERO_SOLUTION_SAMPLES).map(|i| r_start * ratio.powi(i as i32)).collect();
    let zeros = vec![0.0; r.len()];
    RadialSolution::from_samples(
        problem,
        r,
        zeros.clone(),
        zeros.clone(),
        zeros.clone(),
        zeros,
        0.0,
        0.0,
        SolutionStatus::Completed { r_max },
    )
    .expect("static zero grid is valid")
}

/// Why the observer stopped the run.
#[derive(Debug, Clone, Copy, PartialEq)]
enum HaltReason {
    ValueCap,
    Extinction,
}

/// Shared integration driver over the flux state: records samples, watches
/// for extinction of decreasing components and for value blow-up, extends
/// the domain past blow-up thresholds, and assembles the status.
struct FluxDriver<const N: usize> {
    /// Indexes of state components that must stay positive, with labels.
    watched: Vec<(usize, Component)>,
    extinction_floor: f64,
    tol: f64,
}

struct DriverOutput<const N: usize> {
    samples: Vec<(f64, [f64; N])>,
    status: SolutionStatus,
    stats: crate::ode::Stats,
}

impl<const N: usize> FluxDriver<N> {
    fn run(
        &self,
        flux: &impl OdeSystem<N>,
        s0: f64,
        y0: [f64; N],
        s_end_first: f64,
    ) -> Result<DriverOutput<N>, RadialError> {
        let ctrl = StepController {
            h_max: MAX_LOG_STEP,
            h_min: H_FLOOR,
            max_steps: 4_000_000,
            ..StepController::default()
        };
        let mut integ: Integrator<N> = Integrator::new(Tolerances::uniform(self.tol, 1e-300), ctrl);
        // Extinction tolerance: allow absolute error at the floor scale so
        // step control does not stall while a profile crosses zero.
        for &(idx, _) in &self.watched {
            integ.tol.atol[idx] = self.extinction_floor;
        }

        let mut samples: Vec<(f64, [f64; N])> = vec![(s0, y0)];
        let mut s_end = s_end_first;
        let mut extensions = 0;
        let (mut s_cur, mut y_cur) = (s0, y0);

        let status = loop {
            let mut halt: Option<(HaltReason, StepRecord<N>)> = None;
            let outcome = {
                let halt_slot = &mut halt;
                let floor = self.extinction_floor;
                let watched = &self.watched;
                let samples_ref = &mut samples;
                integ.run(flux, s_cur, y_cur, s_end, |rec| {
                    if watched.iter().any(|&(i, _)| rec.y1[i] < floor) {
                        *halt_slot = Some((HaltReason::Extinction, *rec));
                        return Control::Halt;
                    }
                    samples_ref.push((rec.t1, rec.y1));
                    if rec.y1.iter().any(|c| c.abs() >= VALUE_CAP) {
                        *halt_slot = Some((HaltReason::ValueCap, *rec));
                        return Control::Halt;
                    }
                    Control::Continue
                })
            };

            match outcome {
                RunOutcome::ReachedEnd { t, y } => {
                    let peak = self.profile_peak(&y);
                    if peak >= BLOWUP_THRESHOLD && extensions < MAX_EXTENSIONS {
                        // Chase the asymptote past the requested domain to
                        // tighten the blow-up bracket.
                        extensions += 1;
                        s_cur = t;
                        y_cur = y;
                        s_end += EXTENSION_SPAN;
                        continue;
                    }
                    if peak >= BLOWUP_THRESHOLD {
                        break self.blowup_status(flux, &samples);
                    }
                    break SolutionStatus::Completed { r_max: t.exp() };
                }
                RunOutcome::Halted { .. } => {
                    let (reason, rec) = halt.take().expect("halt reason recorded");
                    match reason {
                        HaltReason::ValueCap => break self.blowup_status(flux, &samples),
                        HaltReason::Extinction => {
                            let (s_x, y_x, comp) = self.refine_extinction(&mut integ, flux, &rec);
                            // Replace the last sample if the crossing lands
                            // on it (keeps the grid strictly increasing).
                            let last_s = samples.last().expect("nonempty").0;
                            if s_x.exp() > last_s.exp() * (1.0 + 4.0 * f64::EPSILON) {
                                samples.push((s_x, y_x));
                            } else {
                                *samples.last_mut().expect("nonempty") = (last_s, y_x);
                            }
                            break SolutionStatus::Extinct { radius: s_x.exp(), component: comp };
                        }
                    }
                }
                RunOutcome::Underflow { t, y } => {
                    if self.profile_peak(&y) >= 1e10 {
                        // The step collapse marks a finite-radius asymptote.
                        break self.blowup_status(flux, &samples);
                    }
                    return Err(RadialError::StepFailure { radius: t.exp() });
                }
                RunOutcome::StepBudgetExhausted { t, .. } => {
                    return Err(RadialError::StepFailure { radius: t.exp() });
                }
            }
        };

        Ok(DriverOutput { samples, status, stats: integ.stats })
    }

    /// Largest profile value among the first two components (`u`, and `v`
    /// when present).
    fn profile_peak(&self, y: &[f64; N]) -> f64 {
        let mut peak = y[0];
        if N == 4 {
            peak = peak.max(y[1]);
        }
        peak
    }

    /// Bisect inside the halted step for the radius where the watched
    /// component reaches the extinction floor; returns the clamped state.
    fn refine_extinction(
        &self,
        integ: &mut Integrator<N>,
        flux: &impl OdeSystem<N>,
        rec: &StepRecord<N>,
    ) -> (f64, [f64; N], Component) {
        // Identify the component that crossed (the first watched index whose
        // end value is below the floor).
        let &(idx, comp) = self
            .watched
            .iter()
            .find(|&&(i, _)| rec.y1[i] < self.extinction_floor)
            .expect("a watched component crossed");
        if rec.y0[idx] <= self.extinction_floor {
            // Already at the floor when the step started.
            let mut y = rec.y0;
            y[idx] = 0.0;
            return (rec.t0, y, comp);
        }
        let g = |lambda: f64, integ: &mut Integrator<N>| -> [f64; N] {
            integ.single_step(flux, rec.t0, &rec.y0, lambda * rec.h)
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut y_hi = rec.y1;
        for _ in 0..70 {
            let mid = 0.5 * (lo + hi);
            let y_mid = g(mid, integ);
            if y_mid[idx] < self.extinction_floor {
                hi = mid;
                y_hi = y_mid;
            } else {
                lo = mid;
            }
        }
        let mut y = y_hi;
        y[idx] = 0.0;
        (rec.t0 + hi * rec.h, y, comp)
    }

    /// Assemble the blow-up bracket from the sample tail.
    ///
    /// Near the asymptote the dominant profile follows
    /// `y ~ C (s* - s)^(-κ)`, so `e(s) = y / (dy/ds) = (s* - s)/κ` decays
    /// linearly; two samples give `κ` and hence the remaining distance.
    fn blowup_status(
        &self,
        flux: &impl OdeSystem<N>,
        samples: &[(f64, [f64; N])],
    ) -> SolutionStatus {
        let (s2, y2) = *samples.last().expect("at least one sample");
        let r_lo = s2.exp();
        // Dominant component: largest profile value.
        let idx = if N == 4 && y2[1] > y2[0] { 1 } else { 0 };
        let mut remaining = 0.0;
        if samples.len() >= 2 {
            let (s1, y1) = samples[samples.len() - 2];
            let e = |s: f64, y: &[f64; N]| -> f64 {
                let mut dy = [0.0; N];
                flux.rhs(s, y, &mut dy);
                if dy[idx] > 0.0 {
                    y[idx] / dy[idx]
                } else {
                    0.0
                }
            };
            let (e1, e2) = (e(s1, &y1), e(s2, &y2));
            if e1 > e2 && e2 > 0.0 && s2 > s1 {
                // e decays with slope -1/kappa, so kappa = (s2-s1)/(e1-e2).
                let kappa = ((s2 - s1) / (e1 - e2)).clamp(0.05, 500.0);
                remaining = 1.25 * kappa * e2;
            } else if e2 > 0.0 {
                remaining = 10.0 * e2;
            }
        }
        let r_hi = (s2 + remaining).exp() * (1.0 + 1e-14);
        SolutionStatus::BlowUp { r_lo, r_hi: r_hi.max(r_lo * (1.0 + 4.0 * f64::EPSILON)) }
    }
}

/// Integrate a regular solution of the coupled system from the origin.
///
/// `u0`, `v0` are the center values (both zero returns the zero solution).
/// Integration runs to `r_max` unless the solution blows up (status
/// `BlowUp`, with the asymptote chased past `r_max` for a tight bracket) or
/// a decreasing component reaches zero (status `Extinct`).
pub fn solve_regular(
    params: &SystemParams,
    u0: f64,
    v0: f64,
    r_max: f64,
    tol: f64,
) -> Result<RadialSolution, RadialError> {
    validate_initial("u0", u0)?;
    validate_initial("v0", v0)?;
    validate_domain(r_max, tol)?;
    let problem = Problem::System { params: *params };
    if u0 == 0.0 && v0 == 0.0 {
        return Ok(zero_solution(problem, r_max));
    }

    let scale = u0.max(v0);
    let corr = |r: f64| {
        let u_leg = series_leg(params.eps1(), params.n(), params.p(), params.a(), v0, params.delta(), r);
        let v_leg = series_leg(params.eps2(), params.n(), params.q(), params.b(), u0, params.mu(), r);
        u_leg.correction.abs().max(v_leg.correction.abs())
    };
    let r_start = startup_radius(corr, scale, r_max)?;

    let u_leg = series_leg(params.eps1(), params.n(), params.p(), params.a(), v0, params.delta(), r_start);
    let v_leg = series_leg(params.eps2(), params.n(), params.q(), params.b(), u0, params.mu(), r_start);
    let y0 = [
        u0 + u_leg.correction,
        v0 + v_leg.correction,
        u_leg.flux,
        v_leg.flux,
    ];

    let watched = match params.kind() {
        SystemKind::Absorption => vec![],
        SystemKind::Mixed => vec![(1usize, Component::V)],
        SystemKind::Source => vec![(0usize, Component::U), (1usize, Component::V)],
    };
    let driver = FluxDriver::<4> {
        watched,
        extinction_floor: EXTINCTION_REL_FLOOR * scale,
        tol,
    };
    let flux = SystemFlux::new(params);
    let out = driver.run(&flux, r_start.ln(), y0, r_max.ln())?;

    let n = out.samples.len();
    let (mut r, mut u, mut v, mut du, mut dv) =
        (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for &(s, y) in &out.samples {
        r.push(s.exp());
        u.push(y[0].max(0.0));
        v.push(y[1].max(0.0));
        du.push(slope_from_flux(y[2], s, params.n(), params.p()));
        dv.push(slope_from_flux(y[3], s, params.n(), params.q()));
    }
    let mut sol =
        RadialSolution::from_samples(problem, r, u, v, du, dv, u0, v0, out.status)?;
    sol.set_stats(out.stats.into());
    Ok(sol)
}

/// Integrate a regular solution of the scalar equation `Δ_p u = c r^σ u^Q`
/// from the origin.  The `v`/`dv` columns of the result are identically
/// zero.
pub fn solve_scalar(
    sc: &ScalarParams,
    u0: f64,
    r_max: f64,
    tol: f64,
) -> Result<RadialSolution, RadialError> {
    validate_initial("u0", u0)?;
    validate_domain(r_max, tol)?;
    let problem = Problem::Scalar { params: *sc };
    if u0 == 0.0 {
        return Ok(zero_solution(problem, r_max));
    }

    // The scalar equation is its own absorption: m' = +c r^(N-1+σ) u^Q, so
    // the startup leg uses eps = -1.
    let corr = |r: f64| series_leg(-1.0, sc.n(), sc.p(), sc.sigma(), u0, sc.big_q(), r).correction.abs() * sc.c().powf(1.0 / (sc.p() - 1.0));
    let r_start = startup_radius(corr, u0, r_max)?;
    let leg = series_leg(-1.0, sc.n(), sc.p(), sc.sigma(), u0, sc.big_q(), r_start);
    let c_amp = sc.c().powf(1.0 / (sc.p() - 1.0));
    let y0 = [u0 + leg.correction * c_amp, leg.flux * sc.c()];

    let driver = FluxDriver::<2> {
        watched: vec![],
        extinction_floor: EXTINCTION_REL_FLOOR * u0,
        tol,
    };
    let flux = ScalarFlux::new(sc);
    let out = driver.run(&flux, r_start.ln(), y0, r_max.ln())?;

    let n = out.samples.len();
    let (mut r, mut u, mut du) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for &(s, y) in &out.samples {
        r.push(s.exp());
        u.push(y[0].max(0.0));
        du.push(slope_from_flux(y[1], s, sc.n(), sc.p()));
    }
    let zeros = vec![0.0; n];
    let mut sol = RadialSolution::from_samples(
        problem,
        r,
        u,
        zeros.clone(),
        du,
        zeros,
        u0,
        0.0,
        out.status,
    )?;
    sol.set_stats(out.stats.into());
    Ok(sol)
}

/// The blow-up bracket of a solution with status `BlowUp`.
pub fn blowup_radius(sol: &RadialSolution) -> Result<(f64, f64), RadialError> {
    match sol.status() {
        SolutionStatus::BlowUp { r_lo, r_hi } => Ok((r_lo, r_hi)),
        other => Err(RadialError::NotBlownUp { status: other.label() }),
    }
}
