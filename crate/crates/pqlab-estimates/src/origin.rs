//! Limit estimation at the origin from sampled profiles.
//!
//! Several experiments need lim u(r) as r -> 0 (or evidence that no
//! finite limit exists) from samples that stop at some r_min > 0.  The
//! estimate uses the innermost sampled decade: values are subsampled on
//! a geometric grid and accelerated with one Aitken step, which is
//! exact when the approach to the limit is a single power mode.

use serde::{Deserialize, Serialize};

/// Verdict about the behaviour of a sampled profile as r -> 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OriginLimit {
    /// The samples stabilise; the payload is the extrapolated limit.
    Finite(f64),
    /// The samples grow monotonically by more than a decade across the
    /// innermost sampled decade.
    Diverging,
    /// The samples neither stabilise nor grow monotonically (or there
    /// are too few of them to decide).
    Inconclusive,
}

/// Ratio of the innermost-decade endpoints beyond which a monotone
/// profile is declared divergent.  A profile approaching a finite limit
/// varies by a factor -> 1 per decade near the origin, while even the
/// slow singularity r^(-1/4) varies by 10^(1/4) ~ 1.78; the threshold
/// sits just above that.  (Logarithmic divergence is indistinguishable
/// from convergence at any finite sampling and lands on Finite.)
const DIVERGENCE_FACTOR: f64 = 2.0;

/// Number of geometric subsample nodes inside the innermost decade.
const SUBSAMPLE_NODES: usize = 5;

/// Estimate the limit of `values` as r -> 0 from samples on ascending
/// radii `r`.  Only the innermost sampled decade [r_min, 10 r_min] is
/// consulted; outer samples say nothing about the origin.
pub fn limit_at_origin(r: &[f64], values: &[f64]) -> OriginLimit {
    if r.len() != values.len() || r.len() < 4 {
        return OriginLimit::Inconclusive;
    }
    let r_min = r[0];
    let window_end = r.partition_point(|&x| x <= 10.0 * r_min);
    let window = &values[..window_end];
    if window.len() < 4 {
        return OriginLimit::Inconclusive;
    }

    let nonincreasing = window.windows(2).all(|w| w[1] <= w[0]);
    let nondecreasing = window.windows(2).all(|w| w[1] >= w[0]);
    if !nonincreasing && !nondecreasing {
        return OriginLimit::Inconclusive;
    }

    // window[0] is the innermost value; growth toward the origin beyond
    // a decade in one sampled decade is divergence.
    let inner = window[0].abs();
    let outer = window[window.len() - 1].abs();
    if inner > DIVERGENCE_FACTOR * outer.max(f64::MIN_POSITIVE) && inner > outer {
        return OriginLimit::Diverging;
    }

    // Geometric subsample approaching the origin: radii r_min * 10^(j/4)
    // for j = 4, 3, ..., 0, realised as nearest available samples.
    let mut picks = Vec::with_capacity(SUBSAMPLE_NODES);
    for j in (0..SUBSAMPLE_NODES).rev() {
        let target = r_min * 10.0f64.powf(j as f64 / (SUBSAMPLE_NODES - 1) as f64);
        let idx = nearest_index(&r[..window_end], target);
        if picks.last() != Some(&idx) {
            picks.push(idx);
        }
    }
    let seq: Vec<f64> = picks.iter().map(|&i| values[i]).collect();
    OriginLimit::Finite(aitken_limit(&seq))
}

fn nearest_index(r: &[f64], target: f64) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &x) in r.iter().enumerate() {
        let dist = (x - target).abs();
        if dist < best_dist {
            best_dist = dist;
            best = i;
        }
    }
    best
}

/// One Aitken delta-squared step on the tail of the sequence; falls
/// back to the last raw value when the differences underflow.
fn aitken_limit(seq: &[f64]) -> f64 {
    let n = seq.len();
    if n < 3 {
        return seq[n - 1];
    }
    let (x0, x1, x2) = (seq[n - 3], seq[n - 2], seq[n - 1]);
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    if denom == 0.0 || !denom.is_finite() {
        return x2;
    }
    let accelerated = x2 - d2 * d2 / denom;
    if accelerated.is_finite() {
        accelerated
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_radii(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
        (0..n).map(|i| lo * ratio.powi(i as i32)).collect()
    }

    #[test]
    fn power_mode_approach_is_extrapolated() {
        let r = geometric_radii(1e-6, 1.0, 200);
        let vals: Vec<f64> = r.iter().map(|x| 5.0 + 3.0 * x.powf(1.5)).collect();
        match limit_at_origin(&r, &vals) {
            OriginLimit::Finite(l) => assert!((l - 5.0).abs() < 1e-9, "limit {l}"),
            other => panic!("expected finite limit, got {other:?}"),
        }
    }

    #[test]
    fn constant_profile_returns_its_value() {
        let r = geometric_radii(1e-4, 1.0, 50);
        let vals = vec![2.0; 50];
        assert_eq!(limit_at_origin(&r, &vals), OriginLimit::Finite(2.0));
    }

    #[test]
    fn singular_power_is_diverging() {
        let r = geometric_radii(1e-6, 1.0, 200);
        let vals: Vec<f64> = r.iter().map(|x| x.powi(-2)).collect();
        assert_eq!(limit_at_origin(&r, &vals), OriginLimit::Diverging);
    }

    #[test]
    fn slow_singular_power_is_diverging() {
        let r = geometric_radii(1e-6, 1.0, 200);
        let vals: Vec<f64> = r.iter().map(|x| x.powf(-0.5)).collect();
        assert_eq!(limit_at_origin(&r, &vals), OriginLimit::Diverging);
    }

    #[test]
    fn decay_to_zero_is_a_finite_limit() {
        let r = geometric_radii(1e-6, 1.0, 200);
        let vals: Vec<f64> = r.iter().map(|x| x * x).collect();
        match limit_at_origin(&r, &vals) {
            OriginLimit::Finite(l) => assert!(l.abs() < 1e-12, "limit {l}"),
            other => panic!("expected finite limit, got {other:?}"),
        }
    }

    #[test]
    fn oscillation_is_inconclusive() {
        let r = geometric_radii(1e-6, 1.0, 200);
        let vals: Vec<f64> = r
            .iter()
            .map(|x| 1.0 + 0.5 * (20.0 * x.ln()).sin())
            .collect();
        assert_eq!(limit_at_origin(&r, &vals), OriginLimit::Inconclusive);
    }

    #[test]
    fn short_input_is_inconclusive() {
        assert_eq!(
            limit_at_origin(&[1.0, 2.0], &[1.0, 1.0]),
            OriginLimit::Inconclusive
        );
    }
}
