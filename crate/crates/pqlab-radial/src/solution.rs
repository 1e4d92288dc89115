//! Sampled radial solutions and their metadata.

use serde::Serialize;

use crate::error::RadialError;
use crate::ode::Stats;
use crate::problem::Problem;

/// Which profile component an event refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    U,
    V,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::U => "u",
            Component::V => "v",
        }
    }
}

/// How an integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolutionStatus {
    /// Integrated through the requested domain radius.
    Completed { r_max: f64 },
    /// A profile exceeded the blow-up threshold; `[r_lo, r_hi]` brackets the
    /// finite blow-up radius.
    BlowUp { r_lo: f64, r_hi: f64 },
    /// A profile reached zero at `radius`; the solution stops there because
    /// it would turn negative beyond.
    Extinct { radius: f64, component: Component },
}

impl SolutionStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SolutionStatus::Completed { .. } => "completed",
            SolutionStatus::BlowUp { .. } => "blow_up",
            SolutionStatus::Extinct { .. } => "extinct",
        }
    }
}

/// Integrator effort and accuracy metadata.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IntegratorStats {
    pub accepted: u64,
    pub rejected: u64,
    pub rhs_evals: u64,
    /// Largest scaled local error among accepted steps (1.0 = at tolerance).
    pub max_error_ratio: f64,
}

impl From<Stats> for IntegratorStats {
    fn from(s: Stats) -> Self {
        IntegratorStats {
            accepted: s.accepted,
            rejected: s.rejected,
            rhs_evals: s.rhs_evals,
            max_error_ratio: s.max_error_ratio,
        }
    }
}

/// A radial profile sampled on a strictly increasing grid.
///
/// For scalar problems the `v` and `dv` columns are identically zero; all
/// columns always share the grid length.  `u0`/`v0` store the center values
/// `u(0)`, `v(0)`; they are `f64::INFINITY` for singular profiles built from
/// analytic samples.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSolution {
    problem: Problem,
    r: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    du: Vec<f64>,
    dv: Vec<f64>,
    u0: f64,
    v0: f64,
    status: SolutionStatus,
    stats: IntegratorStats,
}

impl RadialSolution {
    /// Assemble a solution from externally produced samples (for example an
    /// analytic profile).  Validates grid monotonicity and column lengths.
    #[allow(clippy::too_many_arguments)]
    pub fn from_samples(
        problem: Problem,
        r: Vec<f64>,
        u: Vec<f64>,
        v: Vec<f64>,
        du: Vec<f64>,
        dv: Vec<f64>,
        u0: f64,
        v0: f64,
        status: SolutionStatus,
    ) -> Result<Self, RadialError> {
        if r.len() < 2 {
            return Err(RadialError::TooFewSamples { len: r.len(), required: 2 });
        }
        for (name, col) in [("u", &u), ("v", &v), ("du", &du), ("dv", &dv)] {
            if col.len() != r.len() {
                return Err(RadialError::LengthMismatch {
                    name,
                    len: col.len(),
                    expected: r.len(),
                });
            }
        }
        if !(r[0] > 0.0) {
            return Err(RadialError::NonMonotoneRadii { index: 0 });
        }
        for i in 1..r.len() {
            if !(r[i] > r[i - 1]) {
                return Err(RadialError::NonMonotoneRadii { index: i });
            }
        }
        Ok(RadialSolution {
            problem,
            r,
            u,
            v,
            du,
            dv,
            u0,
            v0,
            status,
            stats: IntegratorStats::default(),
        })
    }

    pub(crate) fn set_stats(&mut self, stats: IntegratorStats) {
        self.stats = stats;
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn du(&self) -> &[f64] {
        &self.du
    }

    pub fn dv(&self) -> &[f64] {
        &self.dv
    }

    /// Center value `u(0)` (`INFINITY` for singular profiles).
    pub fn u0(&self) -> f64 {
        self.u0
    }

    /// Center value `v(0)` (`INFINITY` for singular profiles).
    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn status(&self) -> SolutionStatus {
        self.status
    }

    pub fn stats(&self) -> IntegratorStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().expect("nonempty grid")
    }
}
