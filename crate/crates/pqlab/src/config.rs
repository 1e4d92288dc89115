//! Experiment configurations: strict JSON, unknown keys rejected.
//!
//! Each experiment kind owns one config struct; the CLI subcommand decides
//! which one a file is parsed as.  An optional `experiment` field inside
//! the file must match the subcommand when present, so a config cannot
//! silently run under the wrong kind.  The parameter blocks (`system`,
//! `scalar`) reuse the library types, whose deserializers enforce the
//! domain bounds and name the violated one; everything else fails fast
//! here with a message naming the offending key.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pqlab_phase::{FixedPointLabel, Side};
use pqlab_radial::Component;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Read and parse a config file for the given experiment kind, then run
/// its structural validation.
pub fn load<T>(path: &Path, kind: &str) -> Result<T>
where
    T: DeserializeOwned + ExperimentConfig,
{
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let config: T = serde_json::from_str(&text)
        .with_context(|| format!("config {} is not a valid `{kind}` config", path.display()))?;
    if let Some(declared) = config.declared_experiment() {
        if declared != kind {
            bail!(
                "config {} declares experiment `{declared}` but was invoked as `{kind}`",
                path.display()
            );
        }
    }
    config
        .validate()
        .with_context(|| format!("config {} is invalid", path.display()))?;
    Ok(config)
}

/// Common surface of every experiment config.
pub trait ExperimentConfig {
    /// The `experiment` field, when the file carries one.
    fn declared_experiment(&self) -> Option<&str>;
    /// The `out_dir` field, when the file carries one.
    fn out_dir(&self) -> Option<&Path>;
    /// Structural checks beyond what serde encodes.
    fn validate(&self) -> Result<()> {
        Ok(())
    }
}

/// Implement the two field accessors shared by all config structs.
macro_rules! config_accessors {
    () => {
        fn declared_experiment(&self) -> Option<&str> {
            self.experiment.as_deref()
        }
        fn out_dir(&self) -> Option<&Path> {
            self.out_dir.as_deref()
        }
    };
}

fn default_tol() -> f64 {
    1e-10
}

fn default_eta() -> f64 {
    1e-10
}

fn default_t_span() -> f64 {
    40.0
}

fn default_side() -> ConfigSide {
    ConfigSide::Plus
}

fn default_points() -> usize {
    600
}

fn default_count() -> usize {
    7
}

fn default_eps() -> f64 {
    0.5
}

fn default_coeff() -> f64 {
    1.0
}

fn default_one() -> f64 {
    1.0
}

fn default_zero() -> f64 {
    0.0
}

fn default_singular_min() -> f64 {
    1e3
}

/// `"plus"` / `"minus"` in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigSide {
    Plus,
    Minus,
}

impl From<ConfigSide> for Side {
    fn from(side: ConfigSide) -> Self {
        match side {
            ConfigSide::Plus => Side::Plus,
            ConfigSide::Minus => Side::Minus,
        }
    }
}

/// `"u"` / `"v"` in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigComponent {
    U,
    V,
}

impl From<ConfigComponent> for Component {
    fn from(component: ConfigComponent) -> Self {
        match component {
            ConfigComponent::U => Component::U,
            ConfigComponent::V => Component::V,
        }
    }
}

impl ConfigComponent {
    pub fn as_str(self) -> &'static str {
        match self {
            ConfigComponent::U => "u",
            ConfigComponent::V => "v",
        }
    }
}

/// A trajectory launched from a cataloged fixed point.
///
/// Exactly one of `eig_index` (single unstable eigendirection, displaced
/// toward `side`) and `combination` (weighted sum of unstable
/// eigendirections; the weights carry their own signs, so `side` is
/// ignored) must be present.  `anchor`, when given, maps the trajectory
/// back to a radial profile with the first state at that radius.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotSpec {
    /// Catalog label: one of `N0`, `S0`, `S0_sym`, `G0`, `G0_sym`, `A0`,
    /// `P0`, `Q0`, `M0`.
    pub point: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<(usize, f64)>>,
    #[serde(default = "default_side")]
    pub side: ConfigSide,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_t_span")]
    pub t_span: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<f64>,
}

impl ShotSpec {
    pub fn validate(&self) -> Result<()> {
        if FixedPointLabel::parse(&self.point).is_none() {
            bail!(
                "unknown fixed-point label `{}` (catalog: N0, S0, S0_sym, G0, G0_sym, A0, P0, Q0, M0)",
                self.point
            );
        }
        match (&self.eig_index, &self.combination) {
            (Some(_), Some(_)) => {
                bail!("shot sets both `eig_index` and `combination`; pick one")
            }
            (None, None) => bail!("shot needs `eig_index` or `combination`"),
            _ => Ok(()),
        }
    }

    /// The parsed catalog label (call after [`validate`](Self::validate)).
    pub fn label(&self) -> FixedPointLabel {
        FixedPointLabel::parse(&self.point).expect("label was validated")
    }
}

/// Analytic power-pair profile sampled on a log grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticularGrid {
    pub r_min: f64,
    pub r_max: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

impl ParticularGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) || !self.r_min.is_finite() {
            bail!("particular grid needs r_min > 0, got {}", self.r_min);
        }
        if !(self.r_max > self.r_min) || !self.r_max.is_finite() {
            bail!(
                "particular grid needs r_max > r_min, got [{}, {}]",
                self.r_min,
                self.r_max
            );
        }
        if self.points < 2 {
            bail!("particular grid needs at least 2 points, got {}", self.points);
        }
        Ok(())
    }
}

/// Central data for a regular radial solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveData {
    pub u0: f64,
    pub v0: f64,
    pub r_max: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

/// Where a verification experiment gets its radial profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSource {
    /// `{"particular": {"r_min": ..., "r_max": ..., "points": ...}}`
    Particular(ParticularGrid),
    /// `{"solve": {"u0": ..., "v0": ..., "r_max": ..., "tol": ...}}`
    Solve(SolveData),
    /// `{"shot": {"point": ..., "eig_index": ..., ...}}`
    Shot(ShotSpec),
}

impl ProfileSource {
    pub fn validate(&self) -> Result<()> {
        match self {
            ProfileSource::Particular(grid) => grid.validate(),
            ProfileSource::Solve(_) => Ok(()),
            ProfileSource::Shot(spec) => spec.validate(),
        }
    }
}

/// `exponents` experiment: derived exponents and identity residuals.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for ExponentsConfig {
    config_accessors!();
}

/// `classify` experiment: regime flags plus particular amplitudes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for ClassifyConfig {
    config_accessors!();
}

/// `solve` experiment: radial shooting solve of the coupled system.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub u0: f64,
    pub v0: f64,
    pub r_max: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for SolveConfig {
    config_accessors!();
}

/// `scalar-solve` experiment: radial solve of the scalar equation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarSolveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub scalar: pqlab_radial::ScalarParams,
    pub u0: f64,
    pub r_max: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for ScalarSolveConfig {
    config_accessors!();
}

/// `phase-fixed-points` experiment: the full catalog for one parameter set.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseFixedPointsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for PhaseFixedPointsConfig {
    config_accessors!();
}

/// `phase-shoot` experiment: one trajectory out of a cataloged point.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseShootConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub shot: ShotSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for PhaseShootConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        self.shot.validate()
    }
}

/// Family of initial data for a blow-up envelope sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoRayConfig {
    pub kind: KoRayKind,
    pub u_base: f64,
    pub v_base: f64,
}

/// `"scaling"` follows the exact covariance of the system; `"doubling"`
/// doubles only the first datum and is not a symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KoRayKind {
    Scaling,
    Doubling,
}

/// `verify-ko` experiment: envelope constants along a family of data.
///
/// Provide either `system` + `ray` (coupled sweep) or `scalar` + `u_base`
/// (scalar sweep).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyKoConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<pqlab_exponents::SystemParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<KoRayConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<pqlab_radial::ScalarParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_base: Option<f64>,
    #[serde(default = "default_count")]
    pub count: usize,
    /// Extra gate on the constants' spread; the report's own stability
    /// bound always applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyKoConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        match (&self.system, &self.scalar) {
            (Some(_), Some(_)) => bail!("set either `system` or `scalar`, not both"),
            (None, None) => bail!("set `system` + `ray` or `scalar` + `u_base`"),
            (Some(_), None) => {
                if self.ray.is_none() {
                    bail!("a `system` sweep needs a `ray` block");
                }
                if self.u_base.is_some() {
                    bail!("`u_base` belongs to the scalar sweep; the ray block has its own");
                }
            }
            (None, Some(_)) => {
                if self.u_base.is_none() {
                    bail!("a `scalar` sweep needs `u_base`");
                }
                if self.ray.is_some() {
                    bail!("`ray` belongs to the system sweep");
                }
            }
        }
        if let Some(ratio) = self.max_ratio {
            if !(ratio >= 1.0) {
                bail!("`max_ratio` must be at least 1, got {ratio}");
            }
        }
        Ok(())
    }
}

/// `verify-harnack` experiment: ball/annulus oscillation of a profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyHarnackConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub source: ProfileSource,
    /// Ball radii (each annulus is `[r, 2r]`).
    pub radii: Vec<f64>,
    /// Component whose ball ratio must stay within the stability bound.
    pub bounded_component: ConfigComponent,
    /// Component whose ball ratio must exceed `singular_min`.
    pub singular_component: ConfigComponent,
    #[serde(default = "default_singular_min")]
    pub singular_min: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyHarnackConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        self.source.validate()?;
        if self.radii.is_empty() {
            bail!("`radii` must not be empty");
        }
        if self.bounded_component == self.singular_component {
            bail!("`bounded_component` and `singular_component` must differ");
        }
        if !(self.singular_min > 0.0) {
            bail!("`singular_min` must be positive, got {}", self.singular_min);
        }
        Ok(())
    }
}

/// `verify-punctual` experiment: the weighted component ratio of a profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPunctualConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub source: ProfileSource,
    /// Gate on max/min of the recorded ratio (over the report's own
    /// stability verdict).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyPunctualConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        self.source.validate()?;
        if let Some(ratio) = self.max_ratio {
            if !(ratio >= 1.0) {
                bail!("`max_ratio` must be at least 1, got {ratio}");
            }
        }
        Ok(())
    }
}

/// `verify-caccioppoli` experiment: cutoff energy ratios across scales.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyCaccioppoliConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub source: ProfileSource,
    /// Zero-order exponent of the tested estimate.
    pub ell: f64,
    /// Base scale; the sweep descends dyadically from here.
    pub rho: f64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyCaccioppoliConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        self.source.validate()
    }
}

/// `verify-wolff` experiment: potential-vs-oscillation constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyWolffConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    pub system: pqlab_exponents::SystemParams,
    pub source: ProfileSource,
    /// Scales at which the bound constant is recorded.
    pub rho_list: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyWolffConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        self.source.validate()?;
        if self.rho_list.is_empty() {
            bail!("`rho_list` must not be empty");
        }
        Ok(())
    }
}

/// Power family `value(rho) = coeff * rho^exponent` for the bootstrap
/// experiment's synthetic data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerFamily {
    #[serde(default = "default_coeff")]
    pub coeff: f64,
    pub exponent: f64,
}

impl PowerFamily {
    pub fn eval(&self, rho: f64) -> f64 {
        self.coeff * rho.powf(self.exponent)
    }
}

/// `verify-bootstrap` experiment: iteration-lemma certificate on a
/// synthetic power family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyBootstrapConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    /// The quantity `y` under iteration.
    pub y: PowerFamily,
    /// The comparison weight `Phi`.
    pub phi: PowerFamily,
    /// Contraction exponent `d` in `(0, 1)`.
    pub d: f64,
    /// Loss exponent `h >= 0` of the `eps^-h` factor.
    #[serde(default = "default_zero")]
    pub h: f64,
    /// Recurrence constant `K`.
    #[serde(default = "default_one")]
    pub big_k: f64,
    /// Quasi-monotonicity constant `M` of `Phi`.
    pub big_m: f64,
    /// Largest overlap fraction tried by the recurrence check.
    #[serde(default = "default_one")]
    pub eps0: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig for VerifyBootstrapConfig {
    config_accessors!();

    fn validate(&self) -> Result<()> {
        if !(self.rho_min > 0.0) || !self.rho_min.is_finite() {
            bail!("`rho_min` must be positive, got {}", self.rho_min);
        }
        if !(self.rho_max > self.rho_min) || !self.rho_max.is_finite() {
            bail!(
                "`rho_max` must exceed rho_min, got [{}, {}]",
                self.rho_min,
                self.rho_max
            );
        }
        if self.points < 4 {
            bail!("`points` must be at least 4, got {}", self.points);
        }
        Ok(())
    }
}
