//! Phase-space state: logarithmic coordinates of a radial profile.
//!
//! A positive radial pair `(u, v)` with nonvanishing slopes maps to four
//! coordinates built from logarithmic derivatives and weighted flux ratios:
//!
//! ```text
//! X = -r u'/u                                (log-slope of u)
//! Y = -r v'/v                                (log-slope of v)
//! Z = -eps1 r^(1+a) v^delta u' / |u'|^p      (forcing-to-flux ratio, u)
//! W = -eps2 r^(1+b) u^mu    v' / |v'|^q      (forcing-to-flux ratio, v)
//! ```
//!
//! In the time variable `t = ln r` these coordinates obey an autonomous
//! quadratic vector field (see [`crate::sigma_field`]); power-law profiles
//! become fixed points and profile asymptotics become invariant-manifold
//! geometry.

use serde::{Deserialize, Serialize};

/// One state of the autonomous phase system, tagged with its time
/// `t = ln r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    /// Log-slope coordinate of the first component.
    pub x: f64,
    /// Log-slope coordinate of the second component.
    pub y: f64,
    /// Forcing-to-flux coordinate of the first component.
    pub z: f64,
    /// Forcing-to-flux coordinate of the second component.
    pub w: f64,
    /// Logarithmic time `t = ln r`.
    pub t: f64,
}

impl PhaseState {
    /// Build a state from a coordinate array and a time.
    pub fn from_coords(coords: [f64; 4], t: f64) -> Self {
        Self {
            x: coords[0],
            y: coords[1],
            z: coords[2],
            w: coords[3],
            t,
        }
    }

    /// The four phase coordinates as an array (time excluded).
    pub fn coords(&self) -> [f64; 4] {
        [self.x, self.y, self.z, self.w]
    }

    /// Maximum absolute coordinate (time excluded).
    pub fn norm_inf(&self) -> f64 {
        self.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Sign pattern of the coordinates, e.g. `"X>0, Y<0, Z<0, W>0"`.
    ///
    /// Exact zeros are reported as `=0`.  Useful for matching a trajectory
    /// against the sign orthant its asymptotic regime predicts.
    pub fn sign_pattern(&self) -> String {
        const NAMES: [&str; 4] = ["X", "Y", "Z", "W"];
        let parts: Vec<String> = NAMES
            .iter()
            .zip(self.coords())
            .map(|(name, c)| {
                let rel = if c > 0.0 {
                    ">0"
                } else if c < 0.0 {
                    "<0"
                } else {
                    "=0"
                };
                format!("{name}{rel}")
            })
            .collect();
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_roundtrip() {
        let s = PhaseState::from_coords([1.0, -2.0, 0.5, -0.25], 3.0);
        assert_eq!(s.coords(), [1.0, -2.0, 0.5, -0.25]);
        assert_eq!(s.t, 3.0);
        assert_eq!(s.norm_inf(), 2.0);
    }

    #[test]
    fn sign_pattern_reports_each_coordinate() {
        let s = PhaseState::from_coords([2.0, -1.0, 0.0, 7.0], 0.0);
        assert_eq!(s.sign_pattern(), "X>0, Y<0, Z=0, W>0");
    }
}
