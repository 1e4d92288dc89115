//! Problem descriptions accepted by the radial solver: the coupled system
//! from `pqlab-exponents`, or the single absorption equation
//! `Δ_p u = c |x|^σ u^Q`.

use pqlab_exponents::SystemParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rejection reasons for [`ScalarParams::new`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarParamError {
    #[error("dimension must satisfy N >= 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("diffusion exponent p must lie strictly between 1 and N = {n}, got {p}")]
    DiffusionOutOfRange { p: f64, n: u32 },
    #[error("absorption power Q = {big_q} must exceed p - 1 = {pm1}")]
    SubcriticalPower { big_q: f64, pm1: f64 },
    #[error("coefficient c must be strictly positive, got {0}")]
    CoefficientNotPositive(f64),
    #[error("weight sigma = {sigma} must exceed -p = {bound}")]
    WeightTooShallow { sigma: f64, bound: f64 },
    #[error("parameter {name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
}

/// Parameters of the scalar equation `Δ_p u = c r^σ u^Q` with `Q > p-1`,
/// `c > 0`.  Immutable after validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScalarParams", into = "RawScalarParams")]
pub struct ScalarParams {
    n_dim: u32,
    p: f64,
    big_q: f64,
    c: f64,
    sigma: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScalarParams {
    n_dim: u32,
    p: f64,
    big_q: f64,
    #[serde(default = "one")]
    c: f64,
    #[serde(default)]
    sigma: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawScalarParams> for ScalarParams {
    type Error = ScalarParamError;

    fn try_from(raw: RawScalarParams) -> Result<Self, ScalarParamError> {
        ScalarParams::new(raw.n_dim, raw.p, raw.big_q, raw.c, raw.sigma)
    }
}

impl From<ScalarParams> for RawScalarParams {
    fn from(s: ScalarParams) -> Self {
        RawScalarParams { n_dim: s.n_dim, p: s.p, big_q: s.big_q, c: s.c, sigma: s.sigma }
    }
}

impl ScalarParams {
    /// Validate and freeze: `N >= 2`, `1 < p < N`, `Q > p-1`, `c > 0`,
    /// `sigma > -p`.
    pub fn new(n_dim: u32, p: f64, big_q: f64, c: f64, sigma: f64) -> Result<Self, ScalarParamError> {
        for (name, value) in [("p", p), ("big_q", big_q), ("c", c), ("sigma", sigma)] {
            if !value.is_finite() {
                return Err(ScalarParamError::NotFinite { name, value });
            }
        }
        if n_dim < 2 {
            return Err(ScalarParamError::DimensionTooSmall(n_dim));
        }
        if !(p > 1.0 && p < f64::from(n_dim)) {
            return Err(ScalarParamError::DiffusionOutOfRange { p, n: n_dim });
        }
        if !(big_q > p - 1.0) {
            return Err(ScalarParamError::SubcriticalPower { big_q, pm1: p - 1.0 });
        }
        if !(c > 0.0) {
            return Err(ScalarParamError::CoefficientNotPositive(c));
        }
        if !(sigma > -p) {
            return Err(ScalarParamError::WeightTooShallow { sigma, bound: -p });
        }
        Ok(ScalarParams { n_dim, p, big_q, c, sigma })
    }

    pub fn n_dim(&self) -> u32 {
        self.n_dim
    }

    pub fn n(&self) -> f64 {
        f64::from(self.n_dim)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Absorption power `Q`.
    pub fn big_q(&self) -> f64 {
        self.big_q
    }

    /// Absorption coefficient `c`.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Radial weight exponent `σ`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Keller-Osserman decay exponent `p/(Q+1-p)` of the blow-up envelope:
    /// along a family of solutions, `u(0) * R^(p/(Q+1-p))` is invariant
    /// when `σ = 0`.
    pub fn ko_exponent(&self) -> f64 {
        // With a weight the scaling balance shifts to (p + σ)/(Q + 1 - p).
        (self.p + self.sigma) / (self.big_q + 1.0 - self.p)
    }
}

/// What a [`crate::RadialSolution`] solves: the coupled system or the scalar
/// equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "problem", rename_all = "lowercase")]
pub enum Problem {
    System { params: SystemParams },
    Scalar { params: ScalarParams },
}

impl Problem {
    pub fn as_system(&self) -> Option<&SystemParams> {
        match self {
            Problem::System { params } => Some(params),
            Problem::Scalar { .. } => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&ScalarParams> {
        match self {
            Problem::Scalar { params } => Some(params),
            Problem::System { .. } => None,
        }
    }
}
