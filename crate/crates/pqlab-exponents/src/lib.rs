//! Closed-form arithmetic for quasilinear elliptic systems of the form
//!
//! ```text
//!     -Δ_p u = ε₁ |x|^a v^δ,      -Δ_q v = ε₂ |x|^b u^μ,
//! ```
//!
//! with `1 < p, q < N`, `δ, μ > 0`, weights `a > -p`, `b > -q`, and a sign
//! pattern `(ε₁, ε₂)` selecting absorption `(-1, -1)`, mixed `(-1, +1)` or
//! source `(+1, +1)` coupling.
//!
//! The crate provides:
//! - validated construction of [`SystemParams`],
//! - the critical exponents of the pure power-law ansatz
//!   ([`ExponentSet`], [`compute_exponents`]),
//! - regime classification by comparison against the harmonic thresholds
//!   ([`RegimeFlags`], [`classify_regimes`]),
//! - amplitudes of the explicit power-law solution `u* = A* r^-γ`,
//!   `v* = B* r^-ξ` when it exists ([`ParticularSolution`],
//!   [`particular_coefficients`]).
//!
//! Everything here is pure arithmetic: no allocation after construction, no
//! interior mutability, safe to share across threads.

mod exponents;
mod params;
mod particular;
mod regimes;

pub use exponents::{compute_exponents, ExponentSet};
pub use params::{ParamError, SystemKind, SystemParams};
pub use particular::{particular_coefficients, ParticularSolution, RegimeError};
pub use regimes::{classify_regimes, RegimeFlags};
