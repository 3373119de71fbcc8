use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation;

/// Default relative tolerance on gap deviation for [`SampleSeries::is_equidistant`].
pub const EQUIDISTANT_TOL: f64 = 1e-9;

/// Ordered `(x, y)` samples.
///
/// Invariants: at least two samples, equal lengths, all values finite and
/// `xs` strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSeries {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampleSeries {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: xs.len(),
            });
        }
        for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NotIncreasing { index: i + 1 });
        }
        Ok(Self { xs, ys })
    }

    /// Samples on the unit grid `x_k = (k-1)/(n-1)`.
    pub fn on_unit_grid(ys: Vec<f64>) -> Result<Self> {
        let xs = unit_grid(ys.len());
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// Always false for a constructed series; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `x_N - x_1`.
    pub fn span(&self) -> f64 {
        self.xs[self.xs.len() - 1] - self.xs[0]
    }

    /// Largest deviation of a consecutive gap from the mean gap, relative to
    /// the mean gap.
    pub fn gap_deviation(&self) -> f64 {
        let mean_gap = self.span() / (self.len() - 1) as f64;
        self.xs
            .windows(2)
            .map(|w| ((w[1] - w[0]) - mean_gap).abs())
            .fold(0.0, f64::max)
            / mean_gap
    }

    pub fn is_equidistant(&self, tol: f64) -> bool {
        self.gap_deviation() <= tol
    }

    pub(crate) fn require_equidistant(&self, tol: f64) -> Result<()> {
        let deviation = self.gap_deviation();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotEquidistant {
                deviation,
                tolerance: tol,
            })
        }
    }

    /// Pointwise `y - slope * x - intercept`.
    pub fn residuals(&self, slope: f64, intercept: f64) -> Vec<f64> {
        self.xs
            .iter()
            .zip(&self.ys)
            .map(|(x, y)| y - slope * x - intercept)
            .collect()
    }

    pub fn mean_x(&self) -> f64 {
        summation::sum(&self.xs) / self.len() as f64
    }

    pub fn mean_y(&self) -> f64 {
        summation::sum(&self.ys) / self.len() as f64
    }
}

/// `x_k = (k-1)/(n-1)` for `k = 1..=n`. Endpoints are exactly 0 and 1.
pub fn unit_grid(n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.0; n];
    }
    let d = (n - 1) as f64;
    (0..n).map(|k| k as f64 / d).collect()
}
