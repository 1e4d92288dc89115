//! Shape-preserving profile interpolation.
//!
//! Piecewise cubic Hermite interpolation with Fritsch-Carlson slopes: node
//! slopes are weighted harmonic means of the adjacent secants (zero at local
//! extrema), which preserves monotonicity on every interval and reproduces
//! linear data exactly — the midpoint of a linear segment interpolates to
//! the average of its endpoints.

use crate::error::RadialError;
use crate::solution::RadialSolution;

/// Monotonicity-preserving cubic interpolant over a strictly increasing
/// abscissa grid.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Node derivatives chosen by the Fritsch-Carlson limiter.
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// Build the interpolant; `x` must be strictly increasing with at least
    /// two nodes and `y` the same length.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self, RadialError> {
        if x.len() < 2 {
            return Err(RadialError::TooFewSamples { len: x.len(), required: 2 });
        }
        if y.len() != x.len() {
            return Err(RadialError::LengthMismatch { name: "y", len: y.len(), expected: x.len() });
        }
        for i in 1..x.len() {
            if !(x[i] > x[i - 1]) {
                return Err(RadialError::NonMonotoneRadii { index: i });
            }
        }
        let n = x.len();
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        let sec: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = sec[0];
            d[1] = sec[0];
        } else {
            for i in 1..n - 1 {
                // Interior: weighted harmonic mean of adjacent secants, zero
                // across a local extremum or flat.
                if sec[i - 1] * sec[i] > 0.0 {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
                }
            }
            d[0] = edge_slope(h[0], h[1], sec[0], sec[1]);
            d[n - 1] = edge_slope(h[n - 2], h[n - 3], sec[n - 2], sec[n - 3]);
        }
        Ok(MonotoneCubic { x: x.to_vec(), y: y.to_vec(), d })
    }

    /// Smallest abscissa.
    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    /// Largest abscissa.
    pub fn x_max(&self) -> f64 {
        *self.x.last().expect("nonempty")
    }

    /// Evaluate at `x` (must lie within the node range).
    pub fn eval(&self, x: f64) -> Result<f64, RadialError> {
        if !(x >= self.x_min() && x <= self.x_max()) {
            return Err(RadialError::OutOfRange { r: x, r_min: self.x_min(), r_max: self.x_max() });
        }
        // Locate the bracketing interval.
        let idx = match self.x.binary_search_by(|v| v.partial_cmp(&x).expect("finite")) {
            Ok(i) => return Ok(self.y[i]), // exact node hit: stored value
            Err(i) => i - 1,
        };
        let h = self.x[idx + 1] - self.x[idx];
        let t = (x - self.x[idx]) / h;
        let (y0, y1) = (self.y[idx], self.y[idx + 1]);
        let (d0, d1) = (self.d[idx], self.d[idx + 1]);
        // Cubic Hermite basis.
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1)
    }
}

/// Shape-preserving one-sided slope at a boundary node (three-point formula
/// with the standard limiter).
fn edge_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 < 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

/// Cached interpolants for all four profile channels of a solution.
#[derive(Debug, Clone)]
pub struct ProfileInterpolant {
    u: MonotoneCubic,
    v: MonotoneCubic,
    du: MonotoneCubic,
    dv: MonotoneCubic,
}

impl ProfileInterpolant {
    pub fn new(sol: &RadialSolution) -> Result<Self, RadialError> {
        Ok(ProfileInterpolant {
            u: MonotoneCubic::new(sol.r(), sol.u())?,
            v: MonotoneCubic::new(sol.r(), sol.v())?,
            du: MonotoneCubic::new(sol.r(), sol.du())?,
            dv: MonotoneCubic::new(sol.r(), sol.dv())?,
        })
    }

    /// `(u, v, du, dv)` at radius `r`.
    pub fn eval(&self, r: f64) -> Result<(f64, f64, f64, f64), RadialError> {
        Ok((self.u.eval(r)?, self.v.eval(r)?, self.du.eval(r)?, self.dv.eval(r)?))
    }
}

/// Interpolate all four channels of `sol` at radius `r`.
///
/// For repeated queries against the same solution build a
/// [`ProfileInterpolant`] once instead; this convenience rebuilds it per
/// call.
pub fn evaluate(sol: &RadialSolution, r: f64) -> Result<(f64, f64, f64, f64), RadialError> {
    ProfileInterpolant::new(sol)?.eval(r)
}
