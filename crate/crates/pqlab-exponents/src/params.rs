//! Validated parameter sets for the coupled system.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sign pattern `(ε₁, ε₂)` of the right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    /// `ε₁ = ε₂ = -1`: both equations absorb (`-Δ_p u + |x|^a v^δ = 0`).
    Absorption,
    /// `ε₁ = -1`, `ε₂ = +1`: absorption in `u`, source in `v`.
    Mixed,
    /// `ε₁ = ε₂ = +1`: both equations are driven by a source term.
    Source,
}

impl SystemKind {
    /// The pair `(ε₁, ε₂)` as floating-point signs.
    pub fn signs(self) -> (f64, f64) {
        match self {
            SystemKind::Absorption => (-1.0, -1.0),
            SystemKind::Mixed => (-1.0, 1.0),
            SystemKind::Source => (1.0, 1.0),
        }
    }

    /// Lower-case label used in reports and file names.
    pub fn as_str(self) -> &'static str {
        match self {
            SystemKind::Absorption => "absorption",
            SystemKind::Mixed => "mixed",
            SystemKind::Source => "source",
        }
    }
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rejection reasons for [`SystemParams::new`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("dimension must satisfy N >= 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("diffusion exponent {name} must lie strictly between 1 and N = {n}, got {value}")]
    DiffusionOutOfRange { name: &'static str, value: f64, n: u32 },
    #[error("power {name} must be strictly positive, got {value}")]
    PowerNotPositive { name: &'static str, value: f64 },
    #[error("weight {name} = {value} must exceed {bound} so that the forcing is locally integrable")]
    WeightTooShallow { name: &'static str, value: f64, bound: f64 },
    #[error("parameter {name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
}

/// Dimension, diffusion exponents, coupling powers, radial weights and sign
/// pattern of the system.  Immutable once constructed; every constructor path
/// (including deserialization) passes through [`SystemParams::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSystemParams", into = "RawSystemParams")]
pub struct SystemParams {
    n_dim: u32,
    p: f64,
    q: f64,
    delta: f64,
    mu: f64,
    a: f64,
    b: f64,
    kind: SystemKind,
}

/// Wire form of [`SystemParams`]; unknown fields are rejected so that config
/// typos fail fast instead of silently running defaults.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystemParams {
    n_dim: u32,
    p: f64,
    q: f64,
    delta: f64,
    mu: f64,
    #[serde(default)]
    a: f64,
    #[serde(default)]
    b: f64,
    kind: SystemKind,
}

impl TryFrom<RawSystemParams> for SystemParams {
    type Error = ParamError;

    fn try_from(raw: RawSystemParams) -> Result<Self, ParamError> {
        SystemParams::new(raw.n_dim, raw.p, raw.q, raw.delta, raw.mu, raw.a, raw.b, raw.kind)
    }
}

impl From<SystemParams> for RawSystemParams {
    fn from(p: SystemParams) -> Self {
        RawSystemParams {
            n_dim: p.n_dim,
            p: p.p,
            q: p.q,
            delta: p.delta,
            mu: p.mu,
            a: p.a,
            b: p.b,
            kind: p.kind,
        }
    }
}

impl SystemParams {
    /// Validate and freeze a parameter set.
    ///
    /// Requirements: `N >= 2`, `1 < p < N`, `1 < q < N`, `delta > 0`,
    /// `mu > 0`, `a > -p`, `b > -q`, all finite.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n_dim: u32,
        p: f64,
        q: f64,
        delta: f64,
        mu: f64,
        a: f64,
        b: f64,
        kind: SystemKind,
    ) -> Result<Self, ParamError> {
        for (name, value) in [
            ("p", p),
            ("q", q),
            ("delta", delta),
            ("mu", mu),
            ("a", a),
            ("b", b),
        ] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { name, value });
            }
        }
        if n_dim < 2 {
            return Err(ParamError::DimensionTooSmall(n_dim));
        }
        let n = f64::from(n_dim);
        if !(p > 1.0 && p < n) {
            return Err(ParamError::DiffusionOutOfRange { name: "p", value: p, n: n_dim });
        }
        if !(q > 1.0 && q < n) {
            return Err(ParamError::DiffusionOutOfRange { name: "q", value: q, n: n_dim });
        }
        if !(delta > 0.0) {
            return Err(ParamError::PowerNotPositive { name: "delta", value: delta });
        }
        if !(mu > 0.0) {
            return Err(ParamError::PowerNotPositive { name: "mu", value: mu });
        }
        if !(a > -p) {
            return Err(ParamError::WeightTooShallow { name: "a", value: a, bound: -p });
        }
        if !(b > -q) {
            return Err(ParamError::WeightTooShallow { name: "b", value: b, bound: -q });
        }
        Ok(SystemParams { n_dim, p, q, delta, mu, a, b, kind })
    }

    /// Space dimension `N` as an integer.
    pub fn n_dim(&self) -> u32 {
        self.n_dim
    }

    /// Space dimension `N` as a float, for formulas.
    pub fn n(&self) -> f64 {
        f64::from(self.n_dim)
    }

    /// Diffusion exponent of the `u`-equation.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Diffusion exponent of the `v`-equation.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Power of `v` forcing the `u`-equation.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Power of `u` forcing the `v`-equation.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Radial weight exponent of the `u`-equation forcing (`|x|^a`).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Radial weight exponent of the `v`-equation forcing (`|x|^b`).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Sign pattern.
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    /// Sign `ε₁` of the `u`-equation right-hand side.
    pub fn eps1(&self) -> f64 {
        self.kind.signs().0
    }

    /// Sign `ε₂` of the `v`-equation right-hand side.
    pub fn eps2(&self) -> f64 {
        self.kind.signs().1
    }

    /// Same parameters with a different sign pattern.
    pub fn with_kind(&self, kind: SystemKind) -> Self {
        SystemParams { kind, ..*self }
    }

    /// The parameter set with the roles of the two equations exchanged:
    /// `p <-> q`, `a <-> b`, `delta <-> mu`.  The sign pattern is kept as-is,
    /// so the exchange is an exact symmetry for absorption and source kinds.
    pub fn exchanged(&self) -> Self {
        SystemParams {
            n_dim: self.n_dim,
            p: self.q,
            q: self.p,
            delta: self.mu,
            mu: self.delta,
            a: self.b,
            b: self.a,
            kind: self.kind,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_reference_parameters() {
        let p = SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption)
            .expect("valid parameters");
        assert_eq!(p.n(), 3.0);
        assert_eq!(p.eps1(), -1.0);
        assert_eq!(p.eps2(), -1.0);
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(SystemParams::new(1, 1.5, 1.5, 1.0, 1.0, 0.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 1.0, 2.0, 1.0, 1.0, 0.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 3.0, 2.0, 1.0, 1.0, 0.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 2.0, 2.0, 0.0, 1.0, 0.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 2.0, 2.0, 1.0, -1.0, 0.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 2.0, 2.0, 1.0, 1.0, -2.0, 0.0, SystemKind::Absorption).is_err());
        assert!(SystemParams::new(3, 2.0, 2.0, 1.0, 1.0, 0.0, -2.5, SystemKind::Absorption).is_err());
        assert!(
            SystemParams::new(3, f64::NAN, 2.0, 1.0, 1.0, 0.0, 0.0, SystemKind::Absorption)
                .is_err()
        );
    }

    #[test]
    fn signs_follow_kind() {
        assert_eq!(SystemKind::Absorption.signs(), (-1.0, -1.0));
        assert_eq!(SystemKind::Mixed.signs(), (-1.0, 1.0));
        assert_eq!(SystemKind::Source.signs(), (1.0, 1.0));
    }

    #[test]
    fn exchange_is_an_involution() {
        let p = SystemParams::new(4, 2.0, 3.0, 2.0, 4.0, 0.5, -0.5, SystemKind::Absorption)
            .expect("valid parameters");
        let e = p.exchanged();
        assert_eq!(e.p(), 3.0);
        assert_eq!(e.q(), 2.0);
        assert_eq!(e.delta(), 4.0);
        assert_eq!(e.mu(), 2.0);
        assert_eq!(e.a(), -0.5);
        assert_eq!(e.b(), 0.5);
        assert_eq!(e.exchanged(), p);
    }

    #[test]
    fn serde_round_trip_and_unknown_field_rejection() {
        let p = SystemParams::new(3, 2.0, 2.5, 2.0, 1.5, 0.25, 0.0, SystemKind::Mixed)
            .expect("valid parameters");
        let text = serde_json::to_string(&p).expect("serialize");
        let back: SystemParams = serde_json::from_str(&text).expect("deserialize");
        assert_eq!(back, p);

        let bad = r#"{"n_dim":3,"p":2.0,"q":2.0,"delta":2.0,"mu":2.0,"kind":"absorption","extra":1}"#;
        assert!(serde_json::from_str::<SystemParams>(bad).is_err());

        let invalid = r#"{"n_dim":3,"p":9.0,"q":2.0,"delta":2.0,"mu":2.0,"kind":"absorption"}"#;
        assert!(serde_json::from_str::<SystemParams>(invalid).is_err());
    }
}
