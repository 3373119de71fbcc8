//! Pinned data walks.
//!
//! A data walk is the running sum of mean-removed samples,
//! `z_j = sum_{k<=j} (y_k - mean(y))`, with `z_0 = 0` prepended. Removing the
//! mean pins the walk at both ends, so it is a discrete bridge. The walk
//! only looks at sample order; abscissas are ignored.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::SampleSeries;
use crate::summation::NeumaierSum;

/// Steps and positions of a pinned walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataWalk {
    steps: Vec<f64>,
    positions: Vec<f64>,
    mean_removed: f64,
}

impl DataWalk {
    /// Walk built from a raw value sequence (ordinates, residuals, or even
    /// abscissas when a grid's own area is needed).
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: n });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let total: NeumaierSum = values.iter().copied().collect();
        // the mean of a constant sequence must reproduce that constant exactly
        let mean = (total.value() / n as f64).clamp(lo, hi);

        let steps: Vec<f64> = values.iter().map(|v| v - mean).collect();
        let mut positions = Vec::with_capacity(n + 1);
        positions.push(0.0);
        let mut acc = NeumaierSum::new();
        for &s in &steps {
            acc.add(s);
            positions.push(acc.value());
        }
        Ok(Self {
            steps,
            positions,
            mean_removed: mean,
        })
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// `z_0..=z_N`.
    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// `z_1..=z_N`.
    pub fn tail(&self) -> &[f64] {
        &self.positions[1..]
    }

    pub fn mean_removed(&self) -> f64 {
        self.mean_removed
    }

    /// Number of steps `N`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Bound on `|z_N|` guaranteed by construction: `64 eps sum|y|`.
    pub fn pinning_tolerance(values: &[f64]) -> f64 {
        64.0 * f64::EPSILON * values.iter().map(|v| v.abs()).sum::<f64>()
    }
}

/// Builds the pinned walk of `series.ys()`.
pub fn build_walk(series: &SampleSeries) -> Result<DataWalk> {
    DataWalk::from_values(series.ys())
}

/// `A = -sum_{j=1..N} z_j`. Positive for an upward trend.
pub fn signed_area(walk: &DataWalk) -> f64 {
    -walk.tail().iter().copied().collect::<NeumaierSum>().value()
}

/// `N(N+1)/12`, the area of the noise-free unit-slope line on the unit grid,
/// as an exact reduced fraction.
pub fn reference_area(n: usize) -> Result<Ratio<i64>> {
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let n64 = i64::try_from(n).map_err(|_| Error::Overflow(n))?;
    let num = n64
        .checked_add(1)
        .and_then(|m| m.checked_mul(n64))
        .ok_or(Error::Overflow(n))?;
    Ok(Ratio::new(num, 12))
}

/// `(N^3 - N)/12`, the squared norm of the centred index vector and the
/// pure-noise area variance per unit noise variance.
pub fn tilt_norm_sq(n: usize) -> f64 {
    let n = n as u128;
    (n * n * n - n) as f64 / 12.0
}

pub fn reference_area_f64(n: usize) -> Result<f64> {
    let r = reference_area(n)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}

/// Walk of the noise-free unit-slope line on the unit grid:
/// `z_j = (j^2 - j) / (2(n-1)) - j/2` for `j = 1..=n`.
///
/// Interior values are negative; `z_n` is exactly zero.
pub fn reference_parabola(n: usize) -> Vec<f64> {
    assert!(n >= 2, "reference parabola needs n >= 2");
    let denom = 2.0 * (n - 1) as f64;
    (1..=n)
        .map(|j| {
            let j2 = (j * j - j) as f64;
            j2 / denom - j as f64 / 2.0
        })
        .collect()
}

/// [`reference_parabola`] in exact rational arithmetic.
pub fn reference_parabola_exact(n: usize) -> Vec<BigRational> {
    assert!(n >= 2, "reference parabola needs n >= 2");
    let denom = BigInt::from(2 * (n - 1));
    (1..=n)
        .map(|j| {
            let j = BigInt::from(j);
            BigRational::new(&j * &j - &j, denom.clone()) - BigRational::new(j, BigInt::from(2))
        })
        .collect()
}

/// Counts zero crossings of a position sequence: each exact zero counts
/// once, and each strict sign change between neighbours counts once.
pub fn count_sign_changes(positions: &[f64]) -> usize {
    let mut count = 0;
    for (i, &z) in positions.iter().enumerate() {
        if z == 0.0 {
            count += 1;
        } else if let Some(&next) = positions.get(i + 1) {
            if z * next < 0.0 {
                count += 1;
            }
        }
    }
    count
}

/// Interior zeros of a pinned walk, i.e. zero crossings among `z_1..z_{N-1}`.
pub fn count_interior_zeros(walk: &DataWalk) -> usize {
    let p = walk.positions();
    count_sign_changes(&p[1..p.len() - 1])
}
