//! Catalog of fixed points of the phase field with closed-form
//! linearisation data.
//!
//! A fixed point requires each coordinate to vanish or to zero its affine
//! bracket; enumerating the zero/nonzero patterns that admit solutions for
//! valid parameters yields nine distinguished points.  Writing
//! `c_p = (N-p)/(p-1)`, `c_q = (N-q)/(q-1)` and `gamma, xi` for the
//! power-law decay exponents:
//!
//! | label  | coordinates `(X, Y, Z, W)`                  | carries          |
//! |--------|---------------------------------------------|------------------|
//! | N0     | `(0, 0, N+a, N+b)`                          | regular centres  |
//! | S0     | `(-(p+a)/(p-1), 0, N+a, ...)`               | `u ~ r^(p+a)/(p-1)` endpoints |
//! | S0_sym | image of S0 under the component exchange    |                  |
//! | G0     | `(c_p, 0, 0, N+b-mu c_p)`                   | `u ~ r^-c_p`, `v` bounded |
//! | G0_sym | image of G0 under the component exchange    |                  |
//! | A0     | `(c_p, c_q, 0, 0)`                          | both harmonic    |
//! | P0     | `(c_p, (mu c_p - q - b)/(q-1), 0, N+b-mu c_p)` | coupled `v` driven by harmonic `u` |
//! | Q0     | image of P0 under the component exchange    |                  |
//! | M0     | `(gamma, xi, N+a-delta xi, N+b-mu gamma)`   | the power-law solution |
//!
//! For the first eight points the Jacobian is block-triangular and the
//! eigenvalues are explicit affine expressions; `M0` couples all four
//! coordinates and its characteristic polynomial is the quartic
//!
//! ```text
//! (L-gamma)(L-xi)(L+Zbar)(L+Wbar)
//!     - delta mu gamma xi Zbar Wbar / ((p-1)(q-1)) = 0,
//! ```
//!
//! solved numerically (Ferrari splitting with Newton polish); its roots may
//! form complex pairs, which is why eigenvalues are stored as complex
//! numbers throughout.
//!
//! Every point is always listed; the `admissible` flag records whether the
//! point can terminate or originate trajectories of positive profiles for
//! the requested sign pattern (for special parameter values distinct labels
//! may coincide as points).

use num_complex::Complex64;
use pqlab_exponents::{classify_regimes, compute_exponents, SystemKind, SystemParams};
use serde::{Deserialize, Serialize};

use crate::error::PhaseError;
use crate::poly::quartic_roots;

/// Relative floor below which the coupling determinant
/// `D = delta mu - (p-1)(q-1)` counts as zero and the catalog is refused
/// (the power-law exponents entering `P0`, `Q0` and `M0` are undefined).
const COUPLING_FLOOR: f64 = 1e-12;

/// Labels of the cataloged fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FixedPointLabel {
    N0,
    S0,
    S0Sym,
    G0,
    G0Sym,
    A0,
    P0,
    Q0,
    M0,
}

impl FixedPointLabel {
    /// Short text form, e.g. `"S0_sym"`.
    pub fn as_str(self) -> &'static str {
        match self {
            FixedPointLabel::N0 => "N0",
            FixedPointLabel::S0 => "S0",
            FixedPointLabel::S0Sym => "S0_sym",
            FixedPointLabel::G0 => "G0",
            FixedPointLabel::G0Sym => "G0_sym",
            FixedPointLabel::A0 => "A0",
            FixedPointLabel::P0 => "P0",
            FixedPointLabel::Q0 => "Q0",
            FixedPointLabel::M0 => "M0",
        }
    }

    /// Inverse of [`as_str`](Self::as_str); `None` for unknown text.
    pub fn parse(text: &str) -> Option<Self> {
        let all = [
            FixedPointLabel::N0,
            FixedPointLabel::S0,
            FixedPointLabel::S0Sym,
            FixedPointLabel::G0,
            FixedPointLabel::G0Sym,
            FixedPointLabel::A0,
            FixedPointLabel::P0,
            FixedPointLabel::Q0,
            FixedPointLabel::M0,
        ];
        all.into_iter().find(|l| l.as_str() == text)
    }
}

impl std::fmt::Display for FixedPointLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fixed point of the phase field together with its linearisation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointInfo {
    pub label: FixedPointLabel,
    /// Phase coordinates `(X, Y, Z, W)`.
    pub coords: [f64; 4],
    /// Jacobian eigenvalues.  For the eight block-triangular points these
    /// are real and listed in the closed-form order; for `M0` they are the
    /// quartic roots sorted by descending real part.
    pub eigenvalues: [Complex64; 4],
    /// Number of eigenvalues with positive real part.
    pub unstable_dim: usize,
    /// Whether invariant manifolds of this point carry positive profiles
    /// under the requested sign pattern.
    pub admissible: bool,
}

/// Lift a real eigenvalue list to the complex storage format.
fn lift(eigs: [f64; 4]) -> [Complex64; 4] {
    eigs.map(|e| Complex64::new(e, 0.0))
}

fn count_unstable(eigs: &[Complex64; 4]) -> usize {
    eigs.iter().filter(|e| e.re > 0.0).count()
}

/// Coordinates and closed-form eigenvalues of `N0 = (0, 0, N+a, N+b)`.
fn n0_data(params: &SystemParams) -> ([f64; 4], [f64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (a, b) = (params.a(), params.b());
    (
        [0.0, 0.0, n + a, n + b],
        [
            (p + a) / (p - 1.0),
            (q + b) / (q - 1.0),
            -(n + a),
            -(n + b),
        ],
    )
}

/// Coordinates and eigenvalues of
/// `S0 = (-(p+a)/(p-1), 0, N+a, N+b+mu(p+a)/(p-1))`.
///
/// With `Y = 0` the Jacobian row of `Y` reduces to its diagonal entry, so
/// all four eigenvalues are explicit.  The second one,
/// `(q+b+mu(p+a)/(p-1))/(q-1)`, is the only positive one for valid
/// parameters; the unstable manifold is one-dimensional.
fn s0_data(params: &SystemParams) -> ([f64; 4], [f64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (a, b, mu) = (params.a(), params.b(), params.mu());
    let x_bar = -(p + a) / (p - 1.0);
    let w_bar = n + b + mu * (p + a) / (p - 1.0);
    (
        [x_bar, 0.0, n + a, w_bar],
        [
            x_bar,
            (q + b + mu * (p + a) / (p - 1.0)) / (q - 1.0),
            -(n + a),
            -w_bar,
        ],
    )
}

/// Coordinates and eigenvalues of `G0 = (c_p, 0, 0, N+b-mu c_p)`.
fn g0_data(params: &SystemParams) -> ([f64; 4], [f64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (a, b, mu) = (params.a(), params.b(), params.mu());
    let cp = (n - p) / (p - 1.0);
    (
        [cp, 0.0, 0.0, n + b - mu * cp],
        [
            cp,
            (q + b - mu * cp) / (q - 1.0),
            n + a,
            mu * cp - (n + b),
        ],
    )
}

/// Coordinates and eigenvalues of `A0 = (c_p, c_q, 0, 0)`.
fn a0_data(params: &SystemParams) -> ([f64; 4], [f64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());
    let cp = (n - p) / (p - 1.0);
    let cq = (n - q) / (q - 1.0);
    (
        [cp, cq, 0.0, 0.0],
        [cp, cq, n + a - delta * cq, n + b - mu * cp],
    )
}

/// Coordinates and eigenvalues of
/// `P0 = (c_p, (mu c_p - q - b)/(q-1), 0, N+b-mu c_p)`.
///
/// `gamma` is the power-law decay exponent of the first component; the
/// third eigenvalue `D (gamma - c_p)/(q-1)` changes sign exactly at the
/// critical decay rate.
fn p0_data(params: &SystemParams, gamma_ab: f64, big_d: f64) -> ([f64; 4], [f64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (b, mu) = (params.b(), params.mu());
    let cp = (n - p) / (p - 1.0);
    let y_star = (mu * cp - (q + b)) / (q - 1.0);
    let w_star = n + b - mu * cp;
    (
        [cp, y_star, 0.0, w_star],
        [cp, y_star, big_d * (gamma_ab - cp) / (q - 1.0), -w_star],
    )
}

/// Swap the two components of a coordinate vector: `(X,Y,Z,W) -> (Y,X,W,Z)`.
fn exchange_coords(c: [f64; 4]) -> [f64; 4] {
    [c[1], c[0], c[3], c[2]]
}

/// Coordinates and eigenvalues of the fully coupled point
/// `M0 = (gamma, xi, N+a-delta xi, N+b-mu gamma)`, whose constant
/// trajectory is the power-law solution pair.
fn m0_data(
    params: &SystemParams,
    gamma_ab: f64,
    xi_ab: f64,
) -> ([f64; 4], [Complex64; 4]) {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());
    let z_bar = n + a - delta * xi_ab;
    let w_bar = n + b - mu * gamma_ab;
    let coords = [gamma_ab, xi_ab, z_bar, w_bar];

    // Characteristic polynomial
    //   (L-gamma)(L-xi)(L+Z)(L+W) - delta mu gamma xi Z W / ((p-1)(q-1))
    // expanded into monic quartic coefficients via the two quadratics
    // (L^2 - s1 L + p1)(L^2 + s2 L + p2) with s1 = gamma+xi, p1 = gamma xi,
    // s2 = Z+W, p2 = Z W.
    let s1 = gamma_ab + xi_ab;
    let p1 = gamma_ab * xi_ab;
    let s2 = z_bar + w_bar;
    let p2 = z_bar * w_bar;
    let coupling = delta * mu * p1 * p2 / ((p - 1.0) * (q - 1.0));
    let c3 = s2 - s1;
    let c2 = p1 + p2 - s1 * s2;
    let c1 = p1 * s2 - s1 * p2;
    let c0 = p1 * p2 - coupling;
    (coords, quartic_roots(c3, c2, c1, c0))
}

/// All nine cataloged fixed points for a parameter set.
///
/// Points appear in the fixed order `N0, S0, S0_sym, G0, G0_sym, A0, P0,
/// Q0, M0`.  The symmetric points are built by constructing their partner
/// on the component-exchanged parameter set and swapping coordinates back,
/// so both sides share one set of closed forms.
///
/// # Errors
///
/// [`PhaseError::DegenerateExponents`] when the coupling determinant
/// `D = delta mu - (p-1)(q-1)` is too close to zero for the power-law
/// exponents to exist.
pub fn fixed_point_catalog(params: &SystemParams) -> Result<Vec<FixedPointInfo>, PhaseError> {
    let exps = compute_exponents(params);
    let coupling_scale = params.delta() * params.mu()
        + (params.p() - 1.0) * (params.q() - 1.0);
    if exps.big_d.abs() <= COUPLING_FLOOR * coupling_scale {
        return Err(PhaseError::DegenerateExponents { big_d: exps.big_d });
    }

    let exchanged = params.exchanged();
    let exps_ex = compute_exponents(&exchanged);

    let mut catalog = Vec::with_capacity(9);
    let push_real =
        |label: FixedPointLabel, data: ([f64; 4], [f64; 4]), catalog: &mut Vec<FixedPointInfo>| {
            let eigenvalues = lift(data.1);
            catalog.push(FixedPointInfo {
                label,
                coords: data.0,
                unstable_dim: count_unstable(&eigenvalues),
                admissible: admissible(label, params, &exps),
                eigenvalues,
            });
        };

    push_real(FixedPointLabel::N0, n0_data(params), &mut catalog);
    push_real(FixedPointLabel::S0, s0_data(params), &mut catalog);
    let (coords, eigs) = s0_data(&exchanged);
    push_real(
        FixedPointLabel::S0Sym,
        (exchange_coords(coords), eigs),
        &mut catalog,
    );
    push_real(FixedPointLabel::G0, g0_data(params), &mut catalog);
    let (coords, eigs) = g0_data(&exchanged);
    push_real(
        FixedPointLabel::G0Sym,
        (exchange_coords(coords), eigs),
        &mut catalog,
    );
    push_real(FixedPointLabel::A0, a0_data(params), &mut catalog);
    push_real(
        FixedPointLabel::P0,
        p0_data(params, exps.gamma_ab, exps.big_d),
        &mut catalog,
    );
    let (coords, eigs) = p0_data(&exchanged, exps_ex.gamma_ab, exps_ex.big_d);
    push_real(
        FixedPointLabel::Q0,
        (exchange_coords(coords), eigs),
        &mut catalog,
    );

    let (coords, eigenvalues) = m0_data(params, exps.gamma_ab, exps.xi_ab);
    catalog.push(FixedPointInfo {
        label: FixedPointLabel::M0,
        coords,
        unstable_dim: count_unstable(&eigenvalues),
        admissible: admissible(FixedPointLabel::M0, params, &exps),
        eigenvalues,
    });

    Ok(catalog)
}

/// One cataloged point by label.
pub fn catalog_point(
    params: &SystemParams,
    label: FixedPointLabel,
) -> Result<FixedPointInfo, PhaseError> {
    Ok(fixed_point_catalog(params)?
        .into_iter()
        .find(|fp| fp.label == label)
        .expect("catalog lists every label"))
}

/// Whether a point's invariant manifolds can carry positive profiles of
/// the requested sign pattern.
///
/// The rules restate, per point, which asymptotic behaviour the sign
/// pattern admits: e.g. `G0` describes `u ~ alpha r^-c_p` with `v` bounded,
/// which requires an absorption pattern and subcritical coupling
/// `mu < (q+b)(p-1)/(N-p)`.
fn admissible(
    label: FixedPointLabel,
    params: &SystemParams,
    exps: &pqlab_exponents::ExponentSet,
) -> bool {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());
    let kind = params.kind();
    let cp = (n - p) / (p - 1.0);
    let cq = (n - q) / (q - 1.0);
    let mu_low = (q + b) * (p - 1.0) / (n - p);
    let mu_high = (n + b) * (p - 1.0) / (n - p);
    let delta_low = (p + a) * (q - 1.0) / (n - q);
    let delta_high = (n + a) * (q - 1.0) / (n - q);
    let absorption = kind == SystemKind::Absorption;
    let mixed = kind == SystemKind::Mixed;

    match label {
        FixedPointLabel::N0 => true,
        FixedPointLabel::S0 => absorption || mixed,
        FixedPointLabel::S0Sym => absorption,
        FixedPointLabel::G0 => absorption && mu < mu_low,
        FixedPointLabel::G0Sym => absorption && delta < delta_low,
        FixedPointLabel::A0 => (absorption || mixed) && delta < delta_high && mu < mu_high,
        FixedPointLabel::P0 => {
            absorption && exps.gamma_ab > cp && (mu > mu_high || mu < mu_low)
        }
        FixedPointLabel::Q0 => {
            let as_absorption = absorption
                && exps.xi_ab > cq
                && (delta > delta_high || delta < delta_low);
            let as_mixed = mixed && exps.gamma_ab > cp && exps.xi_ab > cq;
            as_absorption || as_mixed
        }
        FixedPointLabel::M0 => {
            classify_regimes(params, exps).particular_exists
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sigma_field;
    use crate::state::PhaseState;

    fn params(
        n: u32,
        p: f64,
        q: f64,
        delta: f64,
        mu: f64,
        kind: SystemKind,
    ) -> SystemParams {
        SystemParams::new(n, p, q, delta, mu, 0.0, 0.0, kind).unwrap()
    }

    fn reference(kind: SystemKind) -> SystemParams {
        params(3, 2.0, 2.0, 2.0, 2.0, kind)
    }

    #[test]
    fn labels_roundtrip_through_text() {
        for label in [
            FixedPointLabel::N0,
            FixedPointLabel::S0,
            FixedPointLabel::S0Sym,
            FixedPointLabel::G0,
            FixedPointLabel::G0Sym,
            FixedPointLabel::A0,
            FixedPointLabel::P0,
            FixedPointLabel::Q0,
            FixedPointLabel::M0,
        ] {
            assert_eq!(FixedPointLabel::parse(label.as_str()), Some(label));
        }
        assert_eq!(FixedPointLabel::parse("X9"), None);
    }

    #[test]
    fn every_cataloged_point_annihilates_the_field() {
        for kind in [SystemKind::Absorption, SystemKind::Mixed, SystemKind::Source] {
            let params = reference(kind);
            for fp in fixed_point_catalog(&params).unwrap() {
                let f = sigma_field(&PhaseState::from_coords(fp.coords, 0.0), &params);
                let norm = f.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                assert!(norm < 1e-12, "{} leaves residual {norm}", fp.label);
            }
        }
    }

    #[test]
    fn saddle_point_matches_reference_values() {
        // N = 3, p = q = 2, delta = mu = 2: S0 = (-2, 0, 3, 7) with
        // eigenvalues (-2, 6, -3, -7); only the second is positive.
        let fp = catalog_point(&reference(SystemKind::Absorption), FixedPointLabel::S0).unwrap();
        assert_eq!(fp.coords, [-2.0, 0.0, 3.0, 7.0]);
        let eigs: Vec<f64> = fp.eigenvalues.iter().map(|e| e.re).collect();
        assert_eq!(eigs, vec![-2.0, 6.0, -3.0, -7.0]);
        assert!(fp.eigenvalues.iter().all(|e| e.im == 0.0));
        assert_eq!(fp.unstable_dim, 1);
        assert!(fp.admissible);
    }

    #[test]
    fn symmetric_saddle_follows_the_exchange() {
        // For symmetric parameters S0_sym must mirror S0's coordinates.
        let fp =
            catalog_point(&reference(SystemKind::Absorption), FixedPointLabel::S0Sym).unwrap();
        assert_eq!(fp.coords, [0.0, -2.0, 7.0, 3.0]);
        assert_eq!(fp.unstable_dim, 1);
        // Direct closed form for asymmetric parameters:
        // S0_sym = (0, -(q+b)/(q-1), N+a+delta(q+b)/(q-1), N+b).
        let asym = SystemParams::new(4, 2.5, 1.8, 1.1, 2.3, 0.5, -0.25, SystemKind::Absorption)
            .unwrap();
        let fp = catalog_point(&asym, FixedPointLabel::S0Sym).unwrap();
        let y = -(1.8 - 0.25) / 0.8;
        assert!((fp.coords[0] - 0.0).abs() < 1e-14);
        assert!((fp.coords[1] - y).abs() < 1e-12);
        assert!((fp.coords[2] - (4.5 - 1.1 * y)).abs() < 1e-12);
        assert!((fp.coords[3] - (4.0 - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn harmonic_escape_point_matches_reference_values() {
        // N = 4, p = q = 2, delta = 5, mu = 1/2: G0 = (2, 0, 0, 3) with
        // eigenvalues (2, 1, 4, -3) and a three-dimensional unstable manifold.
        let params = params(4, 2.0, 2.0, 5.0, 0.5, SystemKind::Absorption);
        let fp = catalog_point(&params, FixedPointLabel::G0).unwrap();
        assert_eq!(fp.coords, [2.0, 0.0, 0.0, 3.0]);
        let eigs: Vec<f64> = fp.eigenvalues.iter().map(|e| e.re).collect();
        assert_eq!(eigs, vec![2.0, 1.0, 4.0, -3.0]);
        assert_eq!(fp.unstable_dim, 3);
        // mu = 1/2 < (q+b)(p-1)/(N-p) = 1, so the point is admissible.
        assert!(fp.admissible);
    }

    #[test]
    fn coupled_harmonic_point_matches_reference_values() {
        // N = 3, p = q = 2, delta = 1/2, mu = 4: gamma = 3 and
        // P0 = (1, 2, 0, -1) with eigenvalues (1, 2, 2, 1): fully unstable.
        let params = params(3, 2.0, 2.0, 0.5, 4.0, SystemKind::Absorption);
        let fp = catalog_point(&params, FixedPointLabel::P0).unwrap();
        assert_eq!(fp.coords, [1.0, 2.0, 0.0, -1.0]);
        let eigs: Vec<f64> = fp.eigenvalues.iter().map(|e| e.re).collect();
        assert_eq!(eigs, vec![1.0, 2.0, 2.0, 1.0]);
        assert_eq!(fp.unstable_dim, 4);
        // gamma = 3 > c_p = 1 and mu = 4 > (N+b)(p-1)/(N-p) = 3.
        assert!(fp.admissible);
    }

    #[test]
    fn power_law_point_has_mixed_real_and_complex_spectrum() {
        // Reference parameters: M0 = (2, 2, -1, -1); the quartic
        // ((L-2)(L-1))^2 = 16 gives roots (3 +- sqrt(17))/2 and
        // (3 +- i sqrt(15))/2, so three eigenvalues have positive real part.
        let fp = catalog_point(&reference(SystemKind::Absorption), FixedPointLabel::M0).unwrap();
        assert_eq!(fp.coords, [2.0, 2.0, -1.0, -1.0]);
        let s17 = 17f64.sqrt();
        let s15 = 15f64.sqrt();
        let want = [
            Complex64::new((3.0 + s17) / 2.0, 0.0),
            Complex64::new(1.5, s15 / 2.0),
            Complex64::new(1.5, -s15 / 2.0),
            Complex64::new((3.0 - s17) / 2.0, 0.0),
        ];
        for (got, want) in fp.eigenvalues.iter().zip(want) {
            assert!(
                (got - want).norm() < 1e-10,
                "eigenvalue {got} differs from {want}"
            );
        }
        assert_eq!(fp.unstable_dim, 3);
        assert!(fp.admissible, "power-law pair exists for these parameters");
    }

    #[test]
    fn admissibility_flags_for_reference_absorption() {
        let catalog = fixed_point_catalog(&reference(SystemKind::Absorption)).unwrap();
        let flag = |label: FixedPointLabel| {
            catalog
                .iter()
                .find(|fp| fp.label == label)
                .unwrap()
                .admissible
        };
        assert!(flag(FixedPointLabel::N0));
        assert!(flag(FixedPointLabel::S0));
        assert!(flag(FixedPointLabel::S0Sym));
        // mu = 2 is not below (q+b)(p-1)/(N-p) = 2: G0 needs strictly less.
        assert!(!flag(FixedPointLabel::G0));
        assert!(!flag(FixedPointLabel::G0Sym));
        // delta = mu = 2 < 3: both harmonic rates can coexist.
        assert!(flag(FixedPointLabel::A0));
        // mu = 2 sits between the brackets (2, 3): P0 excluded.
        assert!(!flag(FixedPointLabel::P0));
        assert!(!flag(FixedPointLabel::Q0));
        assert!(flag(FixedPointLabel::M0));
    }

    #[test]
    fn mixed_pattern_admits_the_exchange_endpoint() {
        // For the mixed pattern Q0 carries the v-extinction trajectories
        // whenever both decay exponents are supercritical.
        let fp = catalog_point(&reference(SystemKind::Mixed), FixedPointLabel::Q0).unwrap();
        assert!(fp.admissible);
        let fp = catalog_point(&reference(SystemKind::Source), FixedPointLabel::Q0).unwrap();
        assert!(!fp.admissible);
    }

    #[test]
    fn vanishing_coupling_determinant_is_rejected() {
        // p = q = 2 with delta mu = 1 makes D = 0.
        let params = params(3, 2.0, 2.0, 2.0, 0.5, SystemKind::Absorption);
        match fixed_point_catalog(&params) {
            Err(PhaseError::DegenerateExponents { .. }) => {}
            other => panic!("expected DegenerateExponents, got {other:?}"),
        }
    }
}
