//! Complex root-finding for the low-degree polynomials of the eigen catalog.
//!
//! Eight of the nine cataloged fixed points have triangular-enough Jacobians
//! for their eigenvalues to be read off in closed form.  The fully coupled
//! point leads to a real-coefficient quartic characteristic polynomial,
//! solved here by Ferrari's quadratic splitting with a Cardano resolvent,
//! followed by complex Newton polishing on the original quartic.  Tiny
//! imaginary parts produced by round-off are snapped to zero so downstream
//! sign counts stay stable.

use num_complex::Complex64;

/// Newton polishing iterations applied to each Ferrari root.
const POLISH_ITERATIONS: usize = 8;

/// Imaginary parts smaller than this (relative to `1 + |re|`) are round-off
/// artifacts of the splitting and are snapped to exactly zero.
const IMAG_SNAP: f64 = 1e-9;

/// Roots of the monic cubic `z^3 + a z^2 + b z + c` over the complexes.
fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    // Depress with z = t - a/3, giving t^3 + p t + q = 0.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = c + (2.0 * a * a * a - 9.0 * a * b) / 27.0;
    let s = ((q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0)).sqrt();
    // Pick the Cardano branch with the larger magnitude to avoid
    // cancellation when the two candidates nearly annihilate.
    let cand_plus = -q / 2.0 + s;
    let cand_minus = -q / 2.0 - s;
    let big = if cand_plus.norm() >= cand_minus.norm() {
        cand_plus
    } else {
        cand_minus
    };
    let u = big.cbrt();
    let v = if u.norm() > 0.0 {
        -p / (u * 3.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    [
        u + v - shift,
        u * omega + v * omega.conj() - shift,
        u * omega.conj() + v * omega - shift,
    ]
}

/// Horner evaluation of the monic quartic and its derivative.
fn quartic_value(lambda: Complex64, c: [f64; 4]) -> (Complex64, Complex64) {
    let [c3, c2, c1, c0] = c;
    let value = (((lambda + c3) * lambda + c2) * lambda + c1) * lambda + c0;
    let derivative = ((lambda * 4.0 + 3.0 * c3) * lambda + 2.0 * c2) * lambda + c1;
    (value, derivative)
}

/// Roots of the monic real-coefficient quartic
/// `lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0`,
/// sorted by descending real part (then descending imaginary part).
pub(crate) fn quartic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> [Complex64; 4] {
    // Depress with lambda = y - c3/4, giving y^4 + p y^2 + q y + r = 0.
    let p = c2 - 3.0 * c3 * c3 / 8.0;
    let q = c1 - 0.5 * c3 * c2 + c3 * c3 * c3 / 8.0;
    let r = c0 - 0.25 * c3 * c1 + c3 * c3 * c2 / 16.0 - 3.0 * c3.powi(4) / 256.0;
    let shift = Complex64::new(c3 / 4.0, 0.0);

    let mut roots: [Complex64; 4];
    let scale = 1.0 + p.abs() + r.abs();
    if q.abs() < 1e-14 * scale {
        // Biquadratic: y^2 = (-p +- sqrt(p^2 - 4r)) / 2.
        let d = Complex64::new(p * p - 4.0 * r, 0.0).sqrt();
        let y2_plus = ((-p + d) / 2.0).sqrt();
        let y2_minus = ((-p - d) / 2.0).sqrt();
        roots = [y2_plus, -y2_plus, y2_minus, -y2_minus];
    } else {
        // Resolvent cubic z^3 - p z^2 - 4 r z + (4 p r - q^2) = 0; any root
        // z splits the depressed quartic into two quadratics
        //   (y^2 + alpha y + beta)(y^2 - alpha y + gamma)
        // with alpha = sqrt(z - p), beta/gamma = z/2 -+ q/(2 alpha).
        let zs = cubic_roots(
            Complex64::new(-p, 0.0),
            Complex64::new(-4.0 * r, 0.0),
            Complex64::new(4.0 * p * r - q * q, 0.0),
        );
        // The split divides by alpha, so prefer the resolvent root keeping
        // |z - p| (and with it |alpha|) as large as possible.
        let z = zs
            .into_iter()
            .max_by(|lhs, rhs| {
                let l = (lhs - p).norm();
                let r = (rhs - p).norm();
                l.partial_cmp(&r).expect("resolvent norms are finite")
            })
            .expect("three resolvent roots");
        let alpha = (z - p).sqrt();
        let beta = z / 2.0 - q / (alpha * 2.0);
        let gamma = z / 2.0 + q / (alpha * 2.0);
        let d1 = (alpha * alpha - beta * 4.0).sqrt();
        let d2 = (alpha * alpha - gamma * 4.0).sqrt();
        roots = [
            (-alpha + d1) / 2.0,
            (-alpha - d1) / 2.0,
            (alpha + d2) / 2.0,
            (alpha - d2) / 2.0,
        ];
    }

    let coeffs = [c3, c2, c1, c0];
    for root in roots.iter_mut() {
        let mut lambda = *root - shift;
        for _ in 0..POLISH_ITERATIONS {
            let (value, derivative) = quartic_value(lambda, coeffs);
            if derivative.norm() == 0.0 {
                break;
            }
            let step = value / derivative;
            // Near a repeated root Newton can stall on round-off noise;
            // keep the last finite, small correction only.
            if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1.0 {
                break;
            }
            lambda -= step;
        }
        let im = if lambda.im.abs() <= IMAG_SNAP * (1.0 + lambda.re.abs()) {
            0.0
        } else {
            lambda.im
        };
        *root = Complex64::new(lambda.re, im);
    }

    roots.sort_by(|lhs, rhs| {
        (rhs.re, rhs.im)
            .partial_cmp(&(lhs.re, lhs.im))
            .expect("roots are finite")
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_root_set(got: [Complex64; 4], want: &[Complex64]) {
        for w in want {
            let best = got
                .iter()
                .map(|g| (g - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "missing root {w}: got {got:?}");
        }
    }

    #[test]
    fn distinct_real_roots() {
        // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
        let roots = quartic_roots(-10.0, 35.0, -50.0, 24.0);
        let want: Vec<Complex64> = [4.0, 3.0, 2.0, 1.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        assert_root_set(roots, &want);
        // sorted descending by real part
        assert!(roots[0].re > roots[1].re && roots[1].re > roots[2].re);
    }

    #[test]
    fn complex_pair_with_real_roots() {
        // (x^2+1)(x-2)(x+5) = x^4 + 3x^3 - 9x^2 + 3x - 10
        let roots = quartic_roots(3.0, -9.0, 3.0, -10.0);
        let want = [
            Complex64::new(2.0, 0.0),
            Complex64::new(-5.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ];
        assert_root_set(roots, &want);
    }

    #[test]
    fn biquadratic_roots() {
        // x^4 - 5x^2 + 4 = (x^2-1)(x^2-4)
        let roots = quartic_roots(0.0, -5.0, 0.0, 4.0);
        let want: Vec<Complex64> = [2.0, 1.0, -1.0, -2.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        assert_root_set(roots, &want);
    }

    #[test]
    fn mixed_real_and_complex_quartet() {
        // ((x-2)(x-1))^2 - 16 = x^4 - 6x^3 + 13x^2 - 12x - 12 has roots
        // (3 +- sqrt(17))/2 and (3 +- i sqrt(15))/2.
        let roots = quartic_roots(-6.0, 13.0, -12.0, -12.0);
        let s17 = 17f64.sqrt();
        let s15 = 15f64.sqrt();
        let want = [
            Complex64::new((3.0 + s17) / 2.0, 0.0),
            Complex64::new((3.0 - s17) / 2.0, 0.0),
            Complex64::new(1.5, s15 / 2.0),
            Complex64::new(1.5, -s15 / 2.0),
        ];
        assert_root_set(roots, &want);
    }

    #[test]
    fn random_real_root_quartets_roundtrip() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rs: [f64; 4] = std::array::from_fn(|_| rng.random_range(-5.0..5.0));
            let c3 = -(rs[0] + rs[1] + rs[2] + rs[3]);
            let c2 = rs[0] * rs[1]
                + rs[0] * rs[2]
                + rs[0] * rs[3]
                + rs[1] * rs[2]
                + rs[1] * rs[3]
                + rs[2] * rs[3];
            let c1 = -(rs[0] * rs[1] * rs[2]
                + rs[0] * rs[1] * rs[3]
                + rs[0] * rs[2] * rs[3]
                + rs[1] * rs[2] * rs[3]);
            let c0 = rs[0] * rs[1] * rs[2] * rs[3];
            let roots = quartic_roots(c3, c2, c1, c0);
            let want: Vec<Complex64> = rs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            for w in &want {
                let best = roots
                    .iter()
                    .map(|g| (g - w).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(best < 1e-7, "missing root {w} of {rs:?}: got {roots:?}");
            }
        }
    }
}
