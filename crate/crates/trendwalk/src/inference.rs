//! Significance of the walk area and of the slope.
//!
//! Under i.i.d. steps with standard deviation `sigma` the signed area has
//! variance `sigma^2 (N^3 - N)/12`. Both t-statistics share the same residual
//! sum of squares and differ only in degrees of freedom (`N-1` for the area,
//! `N-2` for least squares), so `t_area / t_ls = sqrt((N-1)/(N-2))`.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators;
use crate::series::SampleSeries;
use crate::walk;

/// Relative residual scale below which a fit counts as perfect.
pub const PERFECT_FIT_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceReport {
    pub n: usize,
    pub area: f64,
    pub slope: f64,
    /// Noise scale estimated with `N-1` degrees of freedom.
    pub sigma_noise: f64,
    /// Noise scale estimated with `N-2` degrees of freedom.
    pub sigma_noise_ls: f64,
    pub sigma_area: f64,
    pub slope_variance: f64,
    pub dof_area: usize,
    pub dof_ls: usize,
    /// `None` for a perfect fit.
    pub t_area: Option<f64>,
    pub t_ls: Option<f64>,
    pub perfect_fit: bool,
}

/// `sigma sqrt((N^3 - N)/12)`.
pub fn sigma_area(n: usize, sigma: f64) -> f64 {
    sigma * walk::tilt_norm_sq(n).sqrt()
}

/// `12(N-1) sigma^2 / (N(N+1))`, the slope variance on the unit grid.
pub fn slope_variance(n: usize, sigma: f64) -> f64 {
    (12 * (n - 1)) as f64 * sigma * sigma / (n * (n + 1)) as f64
}

/// `sqrt(ssr / dof)`.
pub fn estimate_sigma(residuals: &[f64], dof: usize) -> Result<f64> {
    if dof < 1 || dof >= residuals.len() {
        return Err(Error::InsufficientDof {
            dof,
            len: residuals.len(),
        });
    }
    let ssr = crate::summation::dot(residuals, residuals);
    Ok((ssr / dof as f64).sqrt())
}

/// Area and least-squares t-statistics of an equidistant series.
pub fn t_statistics(series: &SampleSeries) -> Result<SignificanceReport> {
    let n = series.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    let fit = estimators::fit_dw(series)?;
    let area = walk::signed_area(&walk::build_walk(series)?);

    let sigma_noise = estimate_sigma(&fit.residuals, n - 1)?;
    let sigma_noise_ls = estimate_sigma(&fit.residuals, n - 2)?;
    let sigma_a = sigma_area(n, sigma_noise);
    let span = series.span();
    let var_slope = slope_variance(n, sigma_noise_ls) / (span * span);

    let scale = series.ys().iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let rms = (fit.ssr / n as f64).sqrt();
    let perfect_fit = rms <= PERFECT_FIT_RTOL * scale;

    let (t_area, t_ls) = if perfect_fit {
        (None, None)
    } else {
        (Some(area / sigma_a), Some(fit.slope / var_slope.sqrt()))
    };

    Ok(SignificanceReport {
        n,
        area,
        slope: fit.slope,
        sigma_noise,
        sigma_noise_ls,
        sigma_area: sigma_a,
        slope_variance: var_slope,
        dof_area: n - 1,
        dof_ls: n - 2,
        t_area,
        t_ls,
        perfect_fit,
    })
}

/// Large-`N` density of the signed area under pure noise: a zero-mean
/// Gaussian with variance `sigma^2 N^3 / 12`.
pub fn area_pdf(a: f64, n: usize, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveSigma(sigma));
    }
    let n3 = (n as f64).powi(3);
    let s2n3 = sigma * sigma * n3;
    Ok((6.0 / (PI * s2n3)).sqrt() * (-6.0 * a * a / s2n3).exp())
}

/// Distribution function matching [`area_pdf`].
pub fn area_cdf(a: f64, n: usize, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveSigma(sigma));
    }
    let sd = sigma * ((n as f64).powi(3) / 12.0).sqrt();
    Ok(0.5 * libm::erfc(-a / (sd * SQRT_2)))
}
