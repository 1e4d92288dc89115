//! Quantitative estimate harness for radial profiles of quasilinear
//! systems.
//!
//! Each family of functions turns one a-priori estimate into a
//! reproducible numerical experiment on a
//! [`pqlab_radial::RadialSolution`]:
//!
//! * [`ko_envelope`] — Keller--Osserman envelopes: the blow-up radius
//!   of a regular solution against a power of its initial height.
//! * [`harnack_ratios`] — sup/inf ratios over balls and annuli, the
//!   empirical side of Harnack-type comparisons.
//! * [`punctual_ratio`] — the pointwise domination of one component's
//!   power by the other's equation density.
//! * [`caccioppoli_ratio`] — cutoff-weighted mean comparisons with the
//!   explicit `(eps rho)^(-p)` cutoff factor split out.
//! * [`wolff_potential`] — nonlinear potentials of a profile's
//!   density, full and proportionally truncated
//!   ([`truncated_wolff_potential`]), plus closed-form references and
//!   the minorization check [`wolff_bound_check`].
//! * [`bootstrap_certificate`] — certificates for self-improving
//!   recurrences, turning hypothesis checks plus a closed-form
//!   constant into a pass/fail verdict.
//!
//! Experiments report [`EstimateReport`]s: per-scale records of both
//! sides of an inequality and the empirical constant, judged against a
//! declared stability bound.  Nothing here fits free parameters; every
//! constant is computed from the data and compared against thresholds
//! fixed in code.

mod bootstrap;
mod caccioppoli;
mod error;
mod harnack;
mod ko;
mod origin;
mod punctual;
mod quad;
mod report;
mod wolff;

pub use bootstrap::{bootstrap_certificate, BootstrapCertificate};
pub use caccioppoli::{
    caccioppoli_parts, caccioppoli_ratio, CaccioppoliParts, CACCIOPPOLI_RATIO_BOUND,
};
pub use error::EstimateError;
pub use harnack::{harnack_ratios, HarnackRatios};
pub use ko::{ko_envelope, ko_envelope_scalar, KoRay};
pub use origin::{limit_at_origin, OriginLimit};
pub use punctual::punctual_ratio;
pub use report::{
    EstimateRecord, EstimateReport, Verdict, DEFAULT_RATIO_BOUND,
};
pub use wolff::{
    truncated_wolff_potential, wolff_bound_check, wolff_potential,
};
