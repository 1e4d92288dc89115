//! Report plumbing shared by every estimate experiment.
//!
//! The underlying theorems assert the existence of a constant without
//! quantifying it, so each experiment records an empirical constant per
//! scale and declares a stability bound; the verdict summarises whether
//! the constants stayed within that bound across the sampled scales.

use serde::{Deserialize, Serialize};

/// Default stability bound: constants within a factor 5 across scales.
pub const DEFAULT_RATIO_BOUND: f64 = 5.0;

/// Outcome of an estimate experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Constants stayed within the declared max/min ratio bound.
    Bounded,
    /// A constant was infinite, or the constants grew monotonically
    /// past the bound — systematic escape rather than noise.
    Unbounded,
    /// Constants left the bound without a clear trend, or were not
    /// positive, so the experiment neither confirms nor refutes.
    Inconclusive,
}

/// One scale of an estimate experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    /// Scale parameter the record was evaluated at (radius, datum, ...).
    pub scale: f64,
    /// Left-hand side of the estimate at this scale.
    pub lhs: f64,
    /// Right-hand side (without the empirical constant).
    pub rhs: f64,
    /// Empirical constant `lhs / rhs` (or the experiment's own ratio).
    pub constant: f64,
}

/// Scale-by-scale outcome of one estimate experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// Human-readable experiment label.
    pub label: String,
    /// Per-scale records, sorted by ascending scale.
    pub records: Vec<EstimateRecord>,
    /// Declared stability bound on max/min of the constants.
    pub ratio_bound: f64,
    /// Largest recorded constant.
    pub max_constant: f64,
    /// Smallest recorded constant.
    pub min_constant: f64,
    /// Summary verdict; see [`Verdict`].
    pub verdict: Verdict,
}

impl EstimateReport {
    /// Assemble a report: sorts the records by scale, summarises the
    /// constants, and derives the verdict against `ratio_bound`.
    pub fn from_records(
        label: impl Into<String>,
        mut records: Vec<EstimateRecord>,
        ratio_bound: f64,
    ) -> Self {
        records.sort_by(|a, b| a.scale.total_cmp(&b.scale));
        let constants: Vec<f64> = records.iter().map(|r| r.constant).collect();
        let max_constant = constants.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min_constant = constants.iter().copied().fold(f64::INFINITY, f64::min);
        let verdict = Self::judge(&constants, ratio_bound);
        Self {
            label: label.into(),
            records,
            ratio_bound,
            max_constant,
            min_constant,
            verdict,
        }
    }

    /// Spread of the recorded constants (max over min).
    pub fn ratio(&self) -> f64 {
        self.max_constant / self.min_constant
    }

    fn judge(constants: &[f64], ratio_bound: f64) -> Verdict {
        if constants.is_empty() {
            return Verdict::Inconclusive;
        }
        if constants.iter().any(|c| c.is_infinite()) {
            return Verdict::Unbounded;
        }
        if constants.iter().any(|c| !(*c > 0.0)) {
            // Zero, negative, or NaN constants: a ratio bound carries
            // no information, so refuse to rule either way.
            return Verdict::Inconclusive;
        }
        let max = constants.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = constants.iter().copied().fold(f64::INFINITY, f64::min);
        if max <= ratio_bound * min {
            return Verdict::Bounded;
        }
        // Out of bound: monotone drift across every scale is systematic
        // escape; anything else is noise we refuse to interpret.
        let increasing = constants.windows(2).all(|w| w[1] >= w[0]);
        let decreasing = constants.windows(2).all(|w| w[1] <= w[0]);
        if increasing || decreasing {
            Verdict::Unbounded
        } else {
            Verdict::Inconclusive
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(scale: f64, constant: f64) -> EstimateRecord {
        EstimateRecord {
            scale,
            lhs: constant,
            rhs: 1.0,
            constant,
        }
    }

    #[test]
    fn stable_constants_are_bounded() {
        let report = EstimateReport::from_records(
            "stable",
            vec![record(1.0, 2.0), record(2.0, 2.2), record(4.0, 1.9)],
            DEFAULT_RATIO_BOUND,
        );
        assert_eq!(report.verdict, Verdict::Bounded);
        assert!(report.ratio() < 1.2);
    }

    #[test]
    fn records_are_sorted_by_scale() {
        let report = EstimateReport::from_records(
            "sorted",
            vec![record(4.0, 1.0), record(1.0, 1.0), record(2.0, 1.0)],
            DEFAULT_RATIO_BOUND,
        );
        let scales: Vec<f64> = report.records.iter().map(|r| r.scale).collect();
        assert_eq!(scales, vec![1.0, 2.0, 4.0]);
    }

    #[test]
    fn monotone_escape_is_unbounded() {
        let report = EstimateReport::from_records(
            "escape",
            vec![record(1.0, 1.0), record(2.0, 10.0), record(4.0, 100.0)],
            DEFAULT_RATIO_BOUND,
        );
        assert_eq!(report.verdict, Verdict::Unbounded);
    }

    #[test]
    fn infinite_constant_is_unbounded() {
        let report = EstimateReport::from_records(
            "infinite",
            vec![record(1.0, 1.0), record(2.0, f64::INFINITY)],
            DEFAULT_RATIO_BOUND,
        );
        assert_eq!(report.verdict, Verdict::Unbounded);
    }

    #[test]
    fn scattered_constants_are_inconclusive() {
        let report = EstimateReport::from_records(
            "scattered",
            vec![record(1.0, 1.0), record(2.0, 30.0), record(4.0, 2.0)],
            DEFAULT_RATIO_BOUND,
        );
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn nonpositive_constants_are_inconclusive() {
        let report = EstimateReport::from_records(
            "degenerate",
            vec![record(1.0, 0.0), record(2.0, 0.0)],
            DEFAULT_RATIO_BOUND,
        );
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn json_round_trip_preserves_the_report() {
        let report = EstimateReport::from_records(
            "roundtrip",
            vec![record(1.0, 2.0), record(2.0, 2.0)],
            DEFAULT_RATIO_BOUND,
        );
        let text = serde_json::to_string(&report).expect("serializes");
        let back: EstimateReport = serde_json::from_str(&text).expect("parses");
        assert_eq!(back, report);
    }
}
