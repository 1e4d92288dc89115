//! The autonomous vector field governing phase trajectories.
//!
//! In `t = ln r` the four coordinates of [`PhaseState`] obey
//!
//! ```text
//! X_t = X [ X - (N-p)/(p-1) + Z/(p-1) ]
//! Y_t = Y [ Y - (N-q)/(q-1) + W/(q-1) ]
//! Z_t = Z [ N + a - delta*Y - Z ]
//! W_t = W [ N + b - mu*X    - W ]
//! ```
//!
//! Each right-hand side has the factored form `coordinate * (affine
//! bracket)`, so the coordinate hyperplanes `X = 0`, ..., `W = 0` are
//! invariant and orthant membership is preserved along trajectories.  The
//! field is polynomial (quadratic), hence smooth everywhere; its Jacobian
//! is assembled in closed form.

use crate::state::PhaseState;
use pqlab_exponents::SystemParams;

/// Evaluate the phase vector field at a state.
///
/// Returns the time derivatives `[X_t, Y_t, Z_t, W_t]`.  The field does
/// not depend on `t` (the system is autonomous); the state's time tag is
/// ignored.
pub fn sigma_field(state: &PhaseState, params: &SystemParams) -> [f64; 4] {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());
    let cp = (n - p) / (p - 1.0);
    let cq = (n - q) / (q - 1.0);
    let [x, y, z, w] = state.coords();
    [
        x * (x - cp + z / (p - 1.0)),
        y * (y - cq + w / (q - 1.0)),
        z * (n + a - delta * y - z),
        w * (n + b - mu * x - w),
    ]
}

/// Closed-form Jacobian of [`sigma_field`] at a state.
///
/// Row `i` holds the partial derivatives of the `i`-th field component
/// with respect to `(X, Y, Z, W)`.
pub fn sigma_jacobian(state: &PhaseState, params: &SystemParams) -> [[f64; 4]; 4] {
    let (n, p, q) = (params.n(), params.p(), params.q());
    let (delta, mu) = (params.delta(), params.mu());
    let (a, b) = (params.a(), params.b());
    let cp = (n - p) / (p - 1.0);
    let cq = (n - q) / (q - 1.0);
    let [x, y, z, w] = state.coords();
    [
        [2.0 * x - cp + z / (p - 1.0), 0.0, x / (p - 1.0), 0.0],
        [0.0, 2.0 * y - cq + w / (q - 1.0), 0.0, y / (q - 1.0)],
        [0.0, -delta * z, n + a - delta * y - 2.0 * z, 0.0],
        [-mu * w, 0.0, 0.0, n + b - mu * x - 2.0 * w],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use pqlab_exponents::{SystemKind, SystemParams};

    fn reference() -> SystemParams {
        SystemParams::new(3, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0, SystemKind::Absorption).unwrap()
    }

    #[test]
    fn field_at_unit_state_for_reference_parameters() {
        // N = 3, p = q = 2, delta = mu = 2: at (1,1,1,1) the brackets give
        // (1 - 1 + 1, 1 - 1 + 1, 3 - 2 - 1, 3 - 2 - 1) = (1, 1, 0, 0).
        let params = reference();
        let s = PhaseState::from_coords([1.0, 1.0, 1.0, 1.0], 0.0);
        assert_eq!(sigma_field(&s, &params), [1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn field_is_autonomous() {
        let params = reference();
        let s0 = PhaseState::from_coords([0.3, -0.7, 1.1, 2.0], 0.0);
        let s1 = PhaseState::from_coords([0.3, -0.7, 1.1, 2.0], 42.0);
        assert_eq!(sigma_field(&s0, &params), sigma_field(&s1, &params));
    }

    #[test]
    fn coordinate_hyperplanes_are_invariant() {
        let params = reference();
        for i in 0..4 {
            let mut coords = [0.4, 1.3, -0.9, 2.2];
            coords[i] = 0.0;
            let f = sigma_field(&PhaseState::from_coords(coords, 0.0), &params);
            assert_eq!(f[i], 0.0, "component {i} must vanish on its hyperplane");
        }
    }

    #[test]
    fn jacobian_at_origin_is_diagonal() {
        let params = reference();
        let j = sigma_jacobian(&PhaseState::from_coords([0.0; 4], 0.0), &params);
        let cp = 1.0; // (N-p)/(p-1) = 1 for N = 3, p = 2
        let expect = [
            [-cp, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, 3.0, 0.0],
            [0.0, 0.0, 0.0, 3.0],
        ];
        assert_eq!(j, expect);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        use rand::Rng;
        use rand::SeedableRng;
        let params = SystemParams::new(4, 2.5, 1.7, 1.3, 2.1, 0.5, -0.25, SystemKind::Mixed)
            .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let h = 1e-6;
        for _ in 0..100 {
            let coords: [f64; 4] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
            let jac = sigma_jacobian(&PhaseState::from_coords(coords, 0.0), &params);
            for col in 0..4 {
                let mut plus = coords;
                let mut minus = coords;
                plus[col] += h;
                minus[col] -= h;
                let fp = sigma_field(&PhaseState::from_coords(plus, 0.0), &params);
                let fm = sigma_field(&PhaseState::from_coords(minus, 0.0), &params);
                for row in 0..4 {
                    let fd = (fp[row] - fm[row]) / (2.0 * h);
                    assert!(
                        (jac[row][col] - fd).abs() < 1e-6,
                        "J[{row}][{col}] = {} vs FD {fd}",
                        jac[row][col]
                    );
                }
            }
        }
    }
}
