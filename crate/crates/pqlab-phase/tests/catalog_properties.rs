//! Randomised checks of the fixed-point catalog.
//!
//! Over a broad sample of admissible parameter draws, every cataloged
//! point must annihilate the vector field to near machine precision and
//! the closed-form eigenvalues must agree with a numerically computed
//! spectrum of the Jacobian.  The numeric side uses an independent
//! general-purpose eigensolver so the closed forms are cross-checked
//! against something that never saw their derivation.

mod common;

use nalgebra::Matrix4;
use pqlab_exponents::SystemKind;
use pqlab_phase::{
    fixed_point_catalog, sigma_field, sigma_jacobian, FixedPointLabel, PhaseState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 100;
const FIELD_GATE: f64 = 1e-12;
const EIGEN_GATE: f64 = 1e-6;

#[test]
fn cataloged_points_annihilate_the_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..DRAWS {
        let params = common::random_moderate_params(&mut rng);
        let catalog = fixed_point_catalog(&params).expect("catalog for sampled parameters");
        for fp in &catalog {
            let state = PhaseState::from_coords(fp.coords, 0.0);
            let field = sigma_field(&state, &params);
            let norm = field.iter().fold(0.0f64, |m, f| m.max(f.abs()));
            assert!(
                norm < FIELD_GATE,
                "{} at {:?} leaves field residual {norm:.3e} for {params:?}",
                fp.label,
                fp.coords
            );
        }
    }
}

#[test]
fn closed_form_eigenvalues_match_a_numeric_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    for _ in 0..DRAWS {
        let params = common::random_moderate_params(&mut rng);
        let catalog = fixed_point_catalog(&params).expect("catalog for sampled parameters");
        for fp in &catalog {
            let state = PhaseState::from_coords(fp.coords, 0.0);
            let jac = sigma_jacobian(&state, &params);
            let numeric = Matrix4::from_fn(|r, c| jac[r][c]).complex_eigenvalues();
            let mut used = [false; 4];
            for lambda in fp.eigenvalues {
                let mut best = usize::MAX;
                let mut best_dist = f64::INFINITY;
                for (j, nu) in numeric.iter().enumerate() {
                    if used[j] {
                        continue;
                    }
                    let dist = (lambda.re - nu.re).hypot(lambda.im - nu.im);
                    if dist < best_dist {
                        best_dist = dist;
                        best = j;
                    }
                }
                let gate = EIGEN_GATE * (1.0 + lambda.norm());
                assert!(
                    best_dist <= gate,
                    "{}: closed-form eigenvalue {lambda} is {best_dist:.3e} away from \
                     the numeric spectrum {numeric:?} for {params:?}",
                    fp.label
                );
                used[best] = true;
            }
        }
    }
}

#[test]
fn singular_pair_point_always_has_a_one_dimensional_unstable_manifold() {
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    for _ in 0..DRAWS {
        let params = common::random_moderate_params(&mut rng);
        let catalog = fixed_point_catalog(&params).expect("catalog for sampled parameters");
        let s0 = catalog
            .iter()
            .find(|fp| fp.label == FixedPointLabel::S0)
            .expect("S0 is always cataloged");
        assert_eq!(
            s0.unstable_dim, 1,
            "S0 unstable dimension for {params:?}"
        );
    }
}

#[test]
fn unstable_dimension_counts_positive_real_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..DRAWS {
        let params = common::random_moderate_params(&mut rng);
        let catalog = fixed_point_catalog(&params).expect("catalog for sampled parameters");
        for fp in &catalog {
            let count = fp.eigenvalues.iter().filter(|l| l.re > 0.0).count();
            assert_eq!(
                fp.unstable_dim, count,
                "{} stored unstable_dim disagrees with its spectrum for {params:?}",
                fp.label
            );
        }
    }
}

#[test]
fn admissibility_flags_respect_the_sign_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(405);
    for _ in 0..DRAWS {
        let params = common::random_moderate_params(&mut rng);
        let catalog = fixed_point_catalog(&params).expect("catalog for sampled parameters");
        for fp in &catalog {
            if !fp.admissible {
                continue;
            }
            match fp.label {
                FixedPointLabel::N0 => {}
                FixedPointLabel::S0 | FixedPointLabel::A0 => {
                    assert_ne!(params.kind(), SystemKind::Source, "{}", fp.label);
                }
                FixedPointLabel::S0Sym
                | FixedPointLabel::G0
                | FixedPointLabel::G0Sym
                | FixedPointLabel::P0 => {
                    assert_eq!(params.kind(), SystemKind::Absorption, "{}", fp.label);
                }
                FixedPointLabel::Q0 => {
                    assert_ne!(params.kind(), SystemKind::Source, "{}", fp.label);
                }
                FixedPointLabel::M0 => {
                    // The interior point is admissible exactly when the
                    // particular power pair exists, which never happens
                    // for the pure source pattern.
                    assert_ne!(params.kind(), SystemKind::Source, "{}", fp.label);
                }
            }
        }
    }
}
