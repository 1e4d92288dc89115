//! Randomized checks of the exponent identities and classification flags.

use pqlab_exponents::{
    classify_regimes, compute_exponents, particular_coefficients, SystemKind, SystemParams,
};
use proptest::prelude::*;
use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const IDENTITY_TOL: f64 = 1e-12;

/// Draw a valid parameter set with moderate magnitudes.
fn random_params(rng: &mut impl Rng) -> SystemParams {
    let n_dim = rng.random_range(2..=6u32);
    let n = f64::from(n_dim);
    let diffusion = Uniform::new(1.05, (n - 0.05).min(3.5)).expect("nonempty range");
    let power = Uniform::new(0.1, 6.0).expect("nonempty range");
    let p = diffusion.sample(rng);
    let q = diffusion.sample(rng);
    let a = rng.random_range((-p + 0.1)..2.0);
    let b = rng.random_range((-q + 0.1)..2.0);
    let kind = match rng.random_range(0..3) {
        0 => SystemKind::Absorption,
        1 => SystemKind::Mixed,
        _ => SystemKind::Source,
    };
    SystemParams::new(n_dim, p, q, power.sample(rng), power.sample(rng), a, b, kind)
        .expect("sampled in the valid region")
}

/// Both power-matching identities, checked relative to the magnitude of the
/// terms involved.
fn identities_hold(params: &SystemParams) -> bool {
    let e = compute_exponents(params);
    let lhs1 = params.delta() * e.xi_ab;
    let rhs1 = (params.p() - 1.0) * e.gamma_ab + params.p() + params.a();
    let lhs2 = params.mu() * e.gamma_ab;
    let rhs2 = (params.q() - 1.0) * e.xi_ab + params.q() + params.b();
    let ok = |l: f64, r: f64| (l - r).abs() <= IDENTITY_TOL * l.abs().max(r.abs()).max(1.0);
    ok(lhs1, rhs1) && ok(lhs2, rhs2)
}

#[test]
fn exponent_identities_on_ten_thousand_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de5);
    let mut checked = 0usize;
    while checked < 10_000 {
        let params = random_params(&mut rng);
        if compute_exponents(&params).big_d <= 0.0 {
            continue;
        }
        assert!(
            identities_hold(&params),
            "identity failed for {params:?}: {:?}",
            compute_exponents(&params)
        );
        checked += 1;
    }
}

#[test]
fn unweighted_exponents_match_the_specialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let sampled = random_params(&mut rng);
        let unweighted = SystemParams::new(
            sampled.n_dim(),
            sampled.p(),
            sampled.q(),
            sampled.delta(),
            sampled.mu(),
            0.0,
            0.0,
            sampled.kind(),
        )
        .expect("valid");
        let e = compute_exponents(&unweighted);
        // For a = b = 0 the weighted and unweighted formulas coincide exactly.
        assert_eq!(e.gamma_ab.to_bits(), e.gamma0.to_bits());
        assert_eq!(e.xi_ab.to_bits(), e.xi0.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn classification_is_pure_and_consistent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = random_params(&mut rng);
        let exps = compute_exponents(&params);
        let once = classify_regimes(&params, &exps);
        let twice = classify_regimes(&params, &exps);
        prop_assert_eq!(once, twice);
        // (q+b) < (N+b): mu cannot be both above the large threshold and
        // below the small one.
        prop_assert!(!(once.mu_above_nb && once.mu_below_qb));
        // The particular solution requires a positive coupling determinant.
        if once.particular_exists {
            prop_assert!(once.d_positive);
        }
    }

    #[test]
    fn successful_amplitudes_satisfy_their_equations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = random_params(&mut rng);
        let exps = compute_exponents(&params);
        if let Ok(sol) = particular_coefficients(&params, &exps) {
            // The log-form residual divides by the existence margins, so
            // draws grazing a boundary (D near zero, gamma near h_p, xi
            // near h_q) amplify rounding past any fixed gate.  Restrict
            // the check to well-conditioned sets; the boundaries
            // themselves are covered by the rejection tests.
            let margin_p = (sol.gamma_ab - exps.harmonic_p).abs();
            let margin_q = (sol.xi_ab - exps.harmonic_q).abs();
            if exps.big_d < 1e-2 || margin_p < 1e-2 || margin_q < 1e-2 {
                return Ok(());
            }
            let (p, q) = (params.p(), params.q());
            let (gamma, xi) = (sol.gamma_ab, sol.xi_ab);
            // (A gamma)^(p-1) * (p-1)(gamma - h_p) = B^delta, in log form to
            // dodge overflow for large powers.
            let lhs1 = (p - 1.0) * (sol.a_star * gamma).ln()
                + ((p - 1.0) * (gamma - exps.harmonic_p)).ln();
            let rhs1 = params.delta() * sol.b_star.ln();
            let lhs2 = (q - 1.0) * (sol.b_star * xi).ln()
                + ((q - 1.0) * (xi - exps.harmonic_q).abs()).ln();
            let rhs2 = params.mu() * sol.a_star.ln();
            prop_assert!((lhs1 - rhs1).abs() <= 1e-10 * lhs1.abs().max(rhs1.abs()).max(1.0));
            prop_assert!((lhs2 - rhs2).abs() <= 1e-10 * lhs2.abs().max(rhs2.abs()).max(1.0));
        }
    }
}

