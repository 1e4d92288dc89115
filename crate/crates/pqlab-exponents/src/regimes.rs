//! Regime classification: literal comparisons of the derived exponents
//! against their critical thresholds.

use serde::Serialize;

use crate::exponents::ExponentSet;
use crate::params::{SystemKind, SystemParams};

/// Margin treated as "equality" when deciding whether the explicit power-law
/// solution exists: a strict inequality that holds by less than this relative
/// amount is considered degenerate and the flag stays false.
const PARTICULAR_MARGIN: f64 = 1e-12;

/// Boolean regime flags.  Each flag except `particular_exists` is the plain
/// strict comparison written in its doc comment, with no tolerance; ties are
/// false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeFlags {
    /// `D > 0`: the coupling beats the diffusion (superlinear regime).
    pub d_positive: bool,
    /// `gamma_ab > (N-p)/(p-1)`: the `u`-ansatz decays faster than the
    /// p-harmonic fundamental solution.
    pub gamma_supercritical: bool,
    /// `xi_ab > (N-q)/(q-1)`.
    pub xi_supercritical: bool,
    /// `mu < (q+b)(p-1)/(N-p)`.
    pub mu_below_qb: bool,
    /// `mu > (N+b)(p-1)/(N-p)`.
    pub mu_above_nb: bool,
    /// `delta < (N+a)(q-1)/(N-q)`.
    pub delta_below_na: bool,
    /// `delta > (p+a)(q-1)/(N-q)`.
    pub delta_above_pa: bool,
    /// The explicit solution `u* = A* r^-gamma_ab`, `v* = B* r^-xi_ab`
    /// exists with positive amplitudes for this sign pattern:
    /// absorption needs `gamma_ab > (N-p)/(p-1)` and `xi_ab > (N-q)/(q-1)`;
    /// mixed needs `gamma_ab > (N-p)/(p-1)` and `xi_ab < (N-q)/(q-1)`;
    /// source admits none.  All with `D > 0` and a `1e-12` relative margin.
    pub particular_exists: bool,
}

/// `x > y` with a relative safety margin: near-ties count as false.
fn strictly_above(x: f64, y: f64) -> bool {
    x - y > PARTICULAR_MARGIN * x.abs().max(y.abs()).max(1.0)
}

/// Classify a parameter set.  Pure: equal inputs always produce equal flags.
pub fn classify_regimes(params: &SystemParams, exps: &ExponentSet) -> RegimeFlags {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (a, b) = (params.a(), params.b());

    let particular_exists = exps.big_d > PARTICULAR_MARGIN
        && match params.kind() {
            SystemKind::Absorption => {
                strictly_above(exps.gamma_ab, exps.harmonic_p)
                    && strictly_above(exps.xi_ab, exps.harmonic_q)
            }
            SystemKind::Mixed => {
                strictly_above(exps.gamma_ab, exps.harmonic_p)
                    && strictly_above(exps.harmonic_q, exps.xi_ab)
            }
            SystemKind::Source => false,
        };

    RegimeFlags {
        d_positive: exps.big_d > 0.0,
        gamma_supercritical: exps.gamma_ab > exps.harmonic_p,
        xi_supercritical: exps.xi_ab > exps.harmonic_q,
        mu_below_qb: params.mu() < (q + b) * (p - 1.0) / (n - p),
        mu_above_nb: params.mu() > (n + b) * (p - 1.0) / (n - p),
        delta_below_na: params.delta() < (n + a) * (q - 1.0) / (n - q),
        delta_above_pa: params.delta() > (p + a) * (q - 1.0) / (n - q),
        particular_exists,
    }
}
