//! Slope estimators: the area-annulling walk slope and the least-squares
//! oracle it is checked against.
//!
//! The walk route works in step-index space. For a unit-span grid the area
//! ratio `A(y) / (N(N+1)/12)` is already the slope per unit `x`; on a
//! general equidistant grid it is divided by the span `x_N - x_1`, which is
//! the same as scaling the per-step slope by `(N-1)/(x_N - x_1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{SampleSeries, EQUIDISTANT_TOL};
use crate::summation::{self, NeumaierSum};
use crate::walk::{self, DataWalk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitMethod {
    Dw,
    LlsGeneral,
    LlsEquidistant,
}

/// A fitted line together with its residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub method: FitMethod,
    pub residuals: Vec<f64>,
    pub ssr: f64,
}

impl FitResult {
    pub fn from_line(series: &SampleSeries, slope: f64, intercept: f64, method: FitMethod) -> Self {
        let residuals = series.residuals(slope, intercept);
        let ssr = summation::dot(&residuals, &residuals);
        Self {
            slope,
            intercept,
            method,
            residuals,
            ssr,
        }
    }
}

/// The zero-mean index vector `x~_k = (N+1)/2 - k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TiltVector {
    elements: Vec<f64>,
}

impl TiltVector {
    pub fn new(n: usize) -> Self {
        let c = (n + 1) as f64 / 2.0;
        Self {
            elements: (1..=n).map(|k| c - k as f64).collect(),
        }
    }

    pub fn elements(&self) -> &[f64] {
        &self.elements
    }

    /// `x~ . x~ = (N^3 - N)/12`, from integers.
    pub fn norm_sq(&self) -> f64 {
        walk::tilt_norm_sq(self.elements.len())
    }

    pub fn dot(&self, ys: &[f64]) -> f64 {
        summation::dot(&self.elements, ys)
    }
}

/// Walk slope in y per unit x. Rejects grids that are not equidistant to
/// the default tolerance.
pub fn dw_slope(series: &SampleSeries) -> Result<f64> {
    dw_slope_with_tol(series, EQUIDISTANT_TOL)
}

pub fn dw_slope_with_tol(series: &SampleSeries, tol: f64) -> Result<f64> {
    series.require_equidistant(tol)?;
    let walk = walk::build_walk(series)?;
    Ok(slope_from_area(walk::signed_area(&walk), series))
}

fn slope_from_area(area: f64, series: &SampleSeries) -> f64 {
    let reference = walk::reference_area_f64(series.len()).expect("n >= 2");
    let unit = area / reference;
    let span = series.span();
    if span == 1.0 {
        unit
    } else {
        unit / span
    }
}

/// `mean(y - slope x)`.
pub fn dw_intercept(series: &SampleSeries, slope: f64) -> f64 {
    let r: NeumaierSum = series
        .xs()
        .iter()
        .zip(series.ys())
        .map(|(x, y)| y - slope * x)
        .collect();
    r.value() / series.len() as f64
}

/// Full fit by the walk route: walk slope, then intercept from the mean
/// residual.
pub fn fit_dw(series: &SampleSeries) -> Result<FitResult> {
    let slope = dw_slope(series)?;
    let intercept = dw_intercept(series, slope);
    Ok(FitResult::from_line(
        series,
        slope,
        intercept,
        FitMethod::Dw,
    ))
}

/// Least squares `(N Sxy - Sx Sy) / (N Sxx - Sx^2)`, valid on any grid.
///
/// The sums are taken about the sample means; the ratio is invariant under
/// that shift and the raw-sum form loses everything to cancellation on
/// grids far from the origin.
pub fn lls_slope_general(series: &SampleSeries) -> Result<FitResult> {
    let n = series.len() as f64;
    let (mx, my) = (series.mean_x(), series.mean_y());
    let xs: Vec<f64> = series.xs().iter().map(|x| x - mx).collect();
    let ys: Vec<f64> = series.ys().iter().map(|y| y - my).collect();
    let sx = summation::sum(&xs);
    let sy = summation::sum(&ys);
    let sxy = summation::dot(&xs, &ys);
    let sxx = summation::dot(&xs, &xs);
    let denom = [n * sxx, -(sx * sx)]
        .iter()
        .copied()
        .collect::<NeumaierSum>()
        .value();
    if !(denom > 0.0) || !denom.is_finite() {
        return Err(Error::DegenerateDenominator);
    }
    let numer = [n * sxy, -(sx * sy)]
        .iter()
        .copied()
        .collect::<NeumaierSum>()
        .value();
    let slope = numer / denom;
    let intercept = (my + sy / n) - slope * (mx + sx / n);
    Ok(FitResult::from_line(
        series,
        slope,
        intercept,
        FitMethod::LlsGeneral,
    ))
}

/// Closed-form least-squares slope for the unit grid
/// `12(N-1)/(N(N+1)) sum y_k (x_k - 1/2)`.
pub fn lls_slope_equidistant(series: &SampleSeries) -> Result<f64> {
    series.require_equidistant(EQUIDISTANT_TOL)?;
    let xs = series.xs();
    let (first, last) = (xs[0], xs[xs.len() - 1]);
    if first.abs() > EQUIDISTANT_TOL || (last - 1.0).abs() > EQUIDISTANT_TOL {
        return Err(Error::NotUnitSpan { first, last });
    }
    let n = series.len();
    let s: NeumaierSum = series
        .ys()
        .iter()
        .zip(xs)
        .map(|(y, x)| y * (x - 0.5))
        .collect();
    Ok((12 * (n - 1)) as f64 * s.value() / (n * (n + 1)) as f64)
}

/// Slope as a projection on the tilt vector, `-(y . x~)/(x~ . x~)`, converted
/// to y per unit x.
pub fn projection_slope(series: &SampleSeries) -> Result<f64> {
    series.require_equidistant(EQUIDISTANT_TOL)?;
    let tilt = TiltVector::new(series.len());
    let per_step = -tilt.dot(series.ys()) / tilt.norm_sq();
    Ok(per_step * (series.len() - 1) as f64 / series.span())
}

/// Walk of the residuals `y - slope x`. At the walk slope its signed area
/// vanishes.
pub fn residual_walk(series: &SampleSeries, slope: f64) -> Result<DataWalk> {
    DataWalk::from_values(&series.residuals(slope, 0.0))
}

/// Float check of the double-sum identity behind the slope equivalence,
/// to `1e-12` relative.
pub fn double_sum_identity_check(ys: &[f64]) -> bool {
    if ys.len() < 2 {
        return false;
    }
    let (lhs, rhs) = crate::exact::double_sum_sides(ys);
    let tilt = TiltVector::new(ys.len());
    let scale: f64 = ys
        .iter()
        .zip(tilt.elements())
        .map(|(y, t)| (y * t).abs())
        .sum();
    (lhs - rhs).abs() <= 1e-12 * scale.max(lhs.abs()).max(rhs.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn noise_free_unit_slope() {
        for n in 2..50 {
            let s = SampleSeries::on_unit_grid(crate::series::unit_grid(n)).unwrap();
            assert!(rel(dw_slope(&s).unwrap(), 1.0) < 1e-14);
            assert!(rel(projection_slope(&s).unwrap(), 1.0) < 1e-14);
            assert!(dw_intercept(&s, 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_line_recovered() {
        let xs = crate::series::unit_grid(17);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 2.0).collect();
        let s = SampleSeries::new(xs, ys).unwrap();
        let fit = lls_slope_general(&s).unwrap();
        assert!(rel(fit.slope, 3.0) < 1e-14);
        assert!(rel(fit.intercept, 2.0) < 1e-14);
        assert!(fit.ssr < 1e-28);
        let dw = fit_dw(&s).unwrap();
        assert!(rel(dw.slope, 3.0) < 1e-14);
        assert!(rel(dw.intercept, 2.0) < 1e-14);
    }

    #[test]
    fn offset_passes_through() {
        let xs = crate::series::unit_grid(9);
        let ys: Vec<f64> = xs.iter().map(|x| x + 5.0).collect();
        let s = SampleSeries::new(xs, ys).unwrap();
        assert!(rel(dw_intercept(&s, dw_slope(&s).unwrap()), 5.0) < 1e-14);
    }

    #[test]
    fn two_points() {
        let s = SampleSeries::new(vec![1.5, 4.0], vec![2.0, -3.0]).unwrap();
        let expected = (-3.0 - 2.0) / (4.0 - 1.5);
        assert!(rel(lls_slope_general(&s).unwrap().slope, expected) < 1e-15);
        assert!(rel(dw_slope(&s).unwrap(), expected) < 1e-15);
    }

    #[test]
    fn constant_has_no_trend() {
        let s = SampleSeries::on_unit_grid(vec![4.25; 12]).unwrap();
        assert_eq!(lls_slope_equidistant(&s).unwrap(), 0.0);
        assert_eq!(dw_slope(&s).unwrap(), 0.0);
    }

    #[test]
    fn physical_units_on_wide_grid() {
        // x in [10, 30], slope 0.7
        let xs: Vec<f64> = (0..21).map(|k| 10.0 + k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.7 * x - 1.0).collect();
        let s = SampleSeries::new(xs, ys).unwrap();
        assert!(rel(dw_slope(&s).unwrap(), 0.7) < 1e-13);
        assert!(rel(projection_slope(&s).unwrap(), 0.7) < 1e-13);
        assert!(matches!(
            lls_slope_equidistant(&s),
            Err(Error::NotUnitSpan { .. })
        ));
    }

    #[test]
    fn tilt_as_data_projects_to_unit_magnitude() {
        let n = 11;
        let tilt = TiltVector::new(n);
        let xs: Vec<f64> = (1..=n).map(|k| k as f64).collect();
        let s = SampleSeries::new(xs, tilt.elements().to_vec()).unwrap();
        // descending by one per step
        assert!(rel(projection_slope(&s).unwrap(), -1.0) < 1e-15);
        assert!(rel(dw_slope(&s).unwrap(), -1.0) < 1e-15);
    }

    #[test]
    fn irregular_grid_rejected() {
        let s = SampleSeries::new(vec![0.0, 0.1, 1.0], vec![0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(dw_slope(&s), Err(Error::NotEquidistant { .. })));
        assert!(matches!(
            projection_slope(&s),
            Err(Error::NotEquidistant { .. })
        ));
        assert!(lls_slope_general(&s).is_ok());
    }

    #[test]
    fn identity_check_small_cases() {
        assert!(double_sum_identity_check(&[1.0, 1.0, 1.0]));
        assert!(double_sum_identity_check(&[0.0, 1.0]));
        assert!(!double_sum_identity_check(&[1.0]));
    }

    #[test]
    fn tilt_norm() {
        let t = TiltVector::new(24);
        assert_eq!(t.norm_sq(), 1150.0);
        assert_eq!(t.elements().iter().sum::<f64>(), 0.0);
        assert_eq!(summation::dot(t.elements(), t.elements()), 1150.0);
    }
}
