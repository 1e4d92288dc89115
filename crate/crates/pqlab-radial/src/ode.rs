//! Adaptive embedded Runge-Kutta integration.
//!
//! Dormand-Prince 5(4): seven stages, fifth-order propagation with an
//! embedded fourth-order error estimate, first-same-as-last (FSAL) so an
//! accepted step costs six fresh right-hand-side evaluations.  Step-size
//! control follows the usual error-per-step policy
//! `h_new = h * clamp(safety * ratio^(-1/5), min_factor, max_factor)` with
//! the error ratio measured in a mixed absolute/relative infinity norm.
//!
//! The driver reports every accepted step to an observer callback, which can
//! halt the run early (used for zero crossings and value caps).  Refinement
//! inside a single accepted step is done by re-stepping from the stored step
//! start with a scaled step size, which is strictly more accurate than the
//! accepted step itself.

/// Right-hand side of a first-order system `dy/dt = f(t, y)` with
/// compile-time dimension `N`.
pub trait OdeSystem<const N: usize> {
    fn rhs(&self, t: f64, y: &[f64; N], dydt: &mut [f64; N]);
}

/// Mixed error tolerances: component `i` of the local error is divided by
/// `atol[i] + rtol * max(|y_old[i]|, |y_new[i]|)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances<const N: usize> {
    pub rtol: f64,
    pub atol: [f64; N],
}

impl<const N: usize> Tolerances<N> {
    /// Same absolute tolerance for every component.
    pub fn uniform(rtol: f64, atol: f64) -> Self {
        Tolerances { rtol, atol: [atol; N] }
    }
}

/// Step-size policy.
#[derive(Debug, Clone, Copy)]
pub struct StepController {
    /// Multiplier applied to the optimal step estimate (classically 0.9).
    pub safety: f64,
    /// Largest allowed shrink per rejection.
    pub min_factor: f64,
    /// Largest allowed growth per acceptance.
    pub max_factor: f64,
    /// Hard ceiling on the step size (also caps the output spacing).
    pub h_max: f64,
    /// Steps below `max(h_min, 16 eps |t|)` end the run as underflow.
    pub h_min: f64,
    /// Safety cap on the total number of attempted steps.
    pub max_steps: u64,
}

impl Default for StepController {
    fn default() -> Self {
        StepController {
            safety: 0.9,
            min_factor: 0.2,
            max_factor: 5.0,
            h_max: f64::INFINITY,
            h_min: 0.0,
            max_steps: 20_000_000,
        }
    }
}

/// Counters accumulated over a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize)]
pub struct Stats {
    pub accepted: u64,
    pub rejected: u64,
    pub rhs_evals: u64,
    /// Largest scaled local error among accepted steps (<= 1 by policy).
    pub max_error_ratio: f64,
}

impl Stats {
    /// Merge counters from another run segment.
    pub fn absorb(&mut self, other: &Stats) {
        self.accepted += other.accepted;
        self.rejected += other.rejected;
        self.rhs_evals += other.rhs_evals;
        self.max_error_ratio = self.max_error_ratio.max(other.max_error_ratio);
    }
}

/// One accepted step, handed to the observer.
#[derive(Debug, Clone, Copy)]
pub struct StepRecord<const N: usize> {
    pub t0: f64,
    pub y0: [f64; N],
    pub t1: f64,
    pub y1: [f64; N],
    pub h: f64,
}

/// Observer verdict after an accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Halt,
}

/// How a run ended.  `Underflow` is reported as data, not as an error,
/// because only the caller knows whether it marks the approach to a
/// finite-radius singularity or a genuine failure.
#[derive(Debug, Clone, Copy)]
pub enum RunOutcome<const N: usize> {
    /// Integrated through `t_end`.
    ReachedEnd { t: f64, y: [f64; N] },
    /// Observer requested a halt; state is the last accepted step end.
    Halted { t: f64, y: [f64; N] },
    /// Error control demanded a step below the resolvable floor.
    Underflow { t: f64, y: [f64; N] },
    /// `max_steps` exhausted.
    StepBudgetExhausted { t: f64, y: [f64; N] },
}

impl<const N: usize> RunOutcome<N> {
    /// Final time and state regardless of how the run ended.
    pub fn state(&self) -> (f64, [f64; N]) {
        match *self {
            RunOutcome::ReachedEnd { t, y }
            | RunOutcome::Halted { t, y }
            | RunOutcome::Underflow { t, y }
            | RunOutcome::StepBudgetExhausted { t, y } => (t, y),
        }
    }
}

// Dormand-Prince 5(4) tableau.
const STAGES: usize = 7;
const C: [f64; STAGES] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; STAGES] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the fifth- and fourth-order weights; contracting the
/// stages with these gives the local error estimate.
const E: [f64; STAGES] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Exponent in the step-size update, `1/(order + 1)`.
const CONTROL_EXPONENT: f64 = 1.0 / 5.0;

/// Reusable integrator; owns tolerances, controller and counters.
pub struct Integrator<const N: usize> {
    pub tol: Tolerances<N>,
    pub ctrl: StepController,
    pub stats: Stats,
}

impl<const N: usize> Integrator<N> {
    pub fn new(tol: Tolerances<N>, ctrl: StepController) -> Self {
        Integrator { tol, ctrl, stats: Stats::default() }
    }

    /// One raw Dormand-Prince step of size `h` from `(t, y)`.
    ///
    /// Returns the fifth-order solution, the error-estimate vector and the
    /// last stage derivative (for FSAL reuse).  `k1`, when provided, must be
    /// `f(t, y)` and saves one evaluation.
    fn dp_step(
        &mut self,
        system: &impl OdeSystem<N>,
        t: f64,
        y: &[f64; N],
        h: f64,
        k1: Option<[f64; N]>,
    ) -> ([f64; N], [f64; N], [f64; N]) {
        let mut k = [[0.0; N]; STAGES];
        match k1 {
            Some(v) => k[0] = v,
            None => {
                system.rhs(t, y, &mut k[0]);
                self.stats.rhs_evals += 1;
            }
        }
        for stage in 1..STAGES {
            let mut y_stage = *y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        y_stage[i] += h * a * kj[i];
                    }
                }
            }
            let mut k_stage = [0.0; N];
            system.rhs(t + C[stage] * h, &y_stage, &mut k_stage);
            k[stage] = k_stage;
            self.stats.rhs_evals += 1;
        }
        // Stage 7 is evaluated at the fifth-order solution point, so the
        // y-combination with row A[6] *is* the solution (FSAL property).
        let mut y_new = *y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = A[6][j];
            if a != 0.0 {
                for i in 0..N {
                    y_new[i] += h * a * kj[i];
                }
            }
        }
        let mut err = [0.0; N];
        for (j, kj) in k.iter().enumerate() {
            if E[j] != 0.0 {
                for i in 0..N {
                    err[i] += h * E[j] * kj[i];
                }
            }
        }
        (y_new, err, k[6])
    }

    /// Take a single fifth-order step without error control.  Used to refine
    /// events inside an already accepted step.
    pub fn single_step(
        &mut self,
        system: &impl OdeSystem<N>,
        t: f64,
        y: &[f64; N],
        h: f64,
    ) -> [f64; N] {
        self.dp_step(system, t, y, h, None).0
    }

    /// Scaled infinity norm of the error estimate; `<= 1` means acceptable.
    fn error_ratio(&self, err: &[f64; N], y_old: &[f64; N], y_new: &[f64; N]) -> f64 {
        let mut ratio: f64 = 0.0;
        for i in 0..N {
            let scale = self.tol.atol[i] + self.tol.rtol * y_old[i].abs().max(y_new[i].abs());
            let r = if scale > 0.0 { err[i].abs() / scale } else { 0.0 };
            ratio = ratio.max(r);
        }
        ratio
    }

    /// Integrate from `(t0, y0)` toward `t_end` (either direction), invoking
    /// `observer` after every accepted step.
    pub fn run(
        &mut self,
        system: &impl OdeSystem<N>,
        t0: f64,
        y0: [f64; N],
        t_end: f64,
        mut observer: impl FnMut(&StepRecord<N>) -> Control,
    ) -> RunOutcome<N> {
        let direction = (t_end - t0).signum();
        if direction == 0.0 || !t_end.is_finite() {
            return RunOutcome::ReachedEnd { t: t0, y: y0 };
        }
        let mut t = t0;
        let mut y = y0;
        let mut h = self.ctrl.h_max.min((t_end - t0).abs() / 16.0).max(1e-12);
        let mut fsal: Option<[f64; N]> = None;
        let mut attempts: u64 = 0;

        loop {
            if (t - t_end) * direction >= 0.0 {
                return RunOutcome::ReachedEnd { t, y };
            }
            if attempts >= self.ctrl.max_steps {
                return RunOutcome::StepBudgetExhausted { t, y };
            }
            // Step-size floor: controller steps may shrink through repeated
            // accepted steps as well as rejections, so check before every
            // attempt.  (The end-of-interval clip below may legitimately be
            // smaller.)
            let floor = self.ctrl.h_min.max(16.0 * f64::EPSILON * t.abs()).max(1e-300);
            if h < floor {
                return RunOutcome::Underflow { t, y };
            }
            attempts += 1;

            let remaining = (t_end - t).abs();
            let h_try = h.min(remaining);
            let h_signed = h_try * direction;
            let (y_new, err, k_last) = self.dp_step(system, t, &y, h_signed, fsal);
            let ratio = self.error_ratio(&err, &y, &y_new);

            if ratio.is_finite() && ratio <= 1.0 {
                self.stats.accepted += 1;
                self.stats.max_error_ratio = self.stats.max_error_ratio.max(ratio);
                let record = StepRecord { t0: t, y0: y, t1: t + h_signed, y1: y_new, h: h_signed };
                t += h_signed;
                y = y_new;
                fsal = Some(k_last);
                let growth = if ratio > 0.0 {
                    (self.ctrl.safety * ratio.powf(-CONTROL_EXPONENT)).min(self.ctrl.max_factor)
                } else {
                    self.ctrl.max_factor
                };
                h = (h_try * growth.max(self.ctrl.min_factor)).min(self.ctrl.h_max);
                if observer(&record) == Control::Halt {
                    return RunOutcome::Halted { t, y };
                }
            } else {
                self.stats.rejected += 1;
                let shrink = if ratio.is_finite() {
                    (self.ctrl.safety * ratio.powf(-CONTROL_EXPONENT))
                        .clamp(self.ctrl.min_factor, 0.9)
                } else {
                    self.ctrl.min_factor
                };
                h = h_try * shrink;
                fsal = None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    struct Exponential;
    impl OdeSystem<1> for Exponential {
        fn rhs(&self, _t: f64, y: &[f64; 1], dydt: &mut [f64; 1]) {
            dydt[0] = y[0];
        }
    }

    struct Oscillator;
    impl OdeSystem<2> for Oscillator {
        fn rhs(&self, _t: f64, y: &[f64; 2], dydt: &mut [f64; 2]) {
            dydt[0] = y[1];
            dydt[1] = -y[0];
        }
    }

    #[test]
    fn exponential_growth_matches_closed_form() {
        let mut solver = Integrator::new(Tolerances::uniform(1e-12, 1e-14), StepController::default());
        let out = solver.run(&Exponential, 0.0, [1.0], 1.0, |_| Control::Continue);
        let (t, y) = out.state();
        assert_eq!(t, 1.0);
        assert_relative_eq!(y[0], std::f64::consts::E, max_relative = 1e-11);
        assert!(solver.stats.accepted > 0);
        assert!(solver.stats.max_error_ratio <= 1.0);
    }

    #[test]
    fn oscillator_preserves_energy_backward_and_forward() {
        let mut solver = Integrator::new(Tolerances::uniform(1e-11, 1e-13), StepController::default());
        let out = solver.run(&Oscillator, 0.0, [1.0, 0.0], 20.0, |_| Control::Continue);
        let (_, y) = out.state();
        assert_relative_eq!(y[0], (20.0f64).cos(), max_relative = 1e-7, epsilon = 1e-8);
        // Reverse integration returns to the start.
        let back = solver.run(&Oscillator, 20.0, y, 0.0, |_| Control::Continue);
        let (_, y0) = back.state();
        assert_relative_eq!(y0[0], 1.0, max_relative = 1e-7);
        assert_relative_eq!(y0[1], 0.0, epsilon = 1e-7);
    }

    #[test]
    fn observer_halt_stops_the_run() {
        let mut solver = Integrator::new(Tolerances::uniform(1e-10, 1e-12), StepController::default());
        let out = solver.run(&Exponential, 0.0, [1.0], 50.0, |rec| {
            if rec.y1[0] > 10.0 {
                Control::Halt
            } else {
                Control::Continue
            }
        });
        match out {
            RunOutcome::Halted { t, y } => {
                assert!(y[0] > 10.0);
                assert!(t < 50.0);
            }
            other => panic!("expected halt, got {other:?}"),
        }
    }

    #[test]
    fn h_max_caps_output_spacing() {
        let mut solver = Integrator::new(
            Tolerances::uniform(1e-6, 1e-9),
            StepController { h_max: 1e-2, ..StepController::default() },
        );
        let mut max_h: f64 = 0.0;
        solver.run(&Exponential, 0.0, [1.0], 1.0, |rec| {
            max_h = max_h.max(rec.h.abs());
            Control::Continue
        });
        assert!(max_h <= 1e-2 + 1e-15);
    }

    #[test]
    fn single_step_is_fifth_order_accurate() {
        let mut solver = Integrator::new(Tolerances::uniform(1e-9, 1e-12), StepController::default());
        let coarse = solver.single_step(&Exponential, 0.0, &[1.0], 0.1)[0];
        assert_relative_eq!(coarse, (0.1f64).exp(), max_relative = 1e-9);
        let err_coarse = (coarse - (0.1f64).exp()).abs();
        let fine = solver.single_step(&Exponential, 0.0, &[1.0], 0.05)[0];
        let err_fine = (fine - (0.05f64).exp()).abs();
        // Halving the step shrinks the one-step error by roughly 2^6.
        assert!(err_fine < err_coarse / 32.0);
    }
}
