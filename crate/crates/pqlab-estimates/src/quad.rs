//! Fixed-panel quadrature used by the estimate experiments.
//!
//! Every integral here is one-dimensional and radial (the sphere factor
//! is handled analytically by the callers), over smooth integrands on
//! closed intervals, so composite Simpson at a fixed panel count is
//! enough.  The logarithmic variant substitutes t = e^tau, which makes
//! the rule scale exactly over power-law integrands: stretching the
//! interval by a factor multiplies every node value by the same power,
//! a property the scale-freeness checks rely on.

/// Composite Simpson rule for `\int_a^b f(t) dt`.
pub(crate) fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + h * k as f64);
    }
    sum * h / 3.0
}

/// Composite Simpson rule for `\int_a^b g(t) dt / t` with `0 < a < b`,
/// evaluated in the logarithmic variable.
pub(crate) fn log_simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    simpson(|tau| g(tau.exp()), a.ln(), b.ln(), panels)
}
