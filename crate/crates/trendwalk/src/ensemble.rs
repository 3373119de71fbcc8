//! Monte Carlo checks of the area statistics, and the irregular-grid study.
//!
//! Realization `i` draws from ChaCha8 stream `i` of the master seed and the
//! per-realization results are reduced in index order, so summaries are
//! bit-identical for any rayon thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators;
use crate::inference;
use crate::series::SampleSeries;
use crate::summation::NeumaierSum;
use crate::synth::{make_grid_stream, GridKind, GridSpec, NoiseSpec, SeriesGenerator};
use crate::walk::{self, DataWalk};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Binning {
    #[default]
    FreedmanDiaconis,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `counts.len() + 1` bin edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub n: usize,
    pub realizations: usize,
    pub noise_variance: f64,
    pub mean_area: f64,
    pub var_area: f64,
    pub theory_var_area: f64,
    pub mean_slope: f64,
    pub var_slope: f64,
    pub theory_slope_variance: f64,
    pub histogram: Histogram,
    /// Crossings of the unpinned walk of centred noise.
    pub mean_zero_crossings: f64,
    pub mode_zero_crossings: usize,
    /// Crossings of the pinned bridge.
    pub bridge_mean_zero_crossings: f64,
    pub bridge_mode_zero_crossings: usize,
    /// Kolmogorov–Smirnov distance to the large-`N` Gaussian; `None` when
    /// the noise is degenerate.
    pub ks_statistic: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Draw {
    area: f64,
    slope: f64,
    bridge_zeros: usize,
    walk_zeros: usize,
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().copied().collect::<NeumaierSum>().value() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss = xs
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .collect::<NeumaierSum>()
        .value();
    (mean, ss / (n - 1.0))
}

fn mode(counts: impl Iterator<Item = usize>) -> usize {
    let mut tally: Vec<usize> = Vec::new();
    for c in counts {
        if c >= tally.len() {
            tally.resize(c + 1, 0);
        }
        tally[c] += 1;
    }
    // ties resolve to the smallest count
    tally
        .iter()
        .enumerate()
        .fold(
            (0, 0),
            |(bi, bc), (i, &c)| if c > bc { (i, c) } else { (bi, bc) },
        )
        .0
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

const MAX_BINS: usize = 10_000;

/// Histogram of `sorted` values.
pub fn histogram(sorted: &[f64], binning: Binning) -> Histogram {
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let bins = match binning {
        Binning::Fixed(b) => b.max(1),
        Binning::FreedmanDiaconis => {
            let iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
            let width = 2.0 * iqr / (sorted.len() as f64).cbrt();
            if width > 0.0 && hi > lo {
                (((hi - lo) / width).ceil() as usize).clamp(1, MAX_BINS)
            } else {
                1
            }
        }
    };
    let width = (hi - lo) / bins as f64;
    let edges = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + width * i as f64 })
        .collect();
    let mut counts = vec![0u64; bins];
    for &v in sorted {
        let idx = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[idx] += 1;
    }
    Histogram { edges, counts }
}

/// Two-sided KS distance between sorted samples and a CDF.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &v)| {
        let f = cdf(v);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// Pure-noise ensemble with Freedman–Diaconis binning.
pub fn run_area_ensemble(
    n: usize,
    noise: &NoiseSpec,
    realizations: usize,
) -> Result<EnsembleSummary> {
    run_area_ensemble_with(n, noise, realizations, Binning::default())
}

pub fn run_area_ensemble_with(
    n: usize,
    noise: &NoiseSpec,
    realizations: usize,
    binning: Binning,
) -> Result<EnsembleSummary> {
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    if realizations == 0 {
        return Err(Error::InvalidNoise("realizations must be >= 1".into()));
    }
    noise.family.validate()?;
    let centre = noise.family.mean();
    let reference = walk::reference_area_f64(n)?;

    let draws: Vec<Draw> = (0..realizations)
        .into_par_iter()
        .map(|i| -> Result<Draw> {
            let mut gen = SeriesGenerator::new(noise, i as u64)?;
            let values = gen.noise(n);
            let w = DataWalk::from_values(&values)?;
            let area = walk::signed_area(&w);
            let mut acc = 0.0;
            let free: Vec<f64> = values
                .iter()
                .map(|v| {
                    acc += v - centre;
                    acc
                })
                .collect();
            Ok(Draw {
                area,
                slope: area / reference,
                bridge_zeros: walk::count_interior_zeros(&w),
                walk_zeros: walk::count_sign_changes(&free),
            })
        })
        .collect::<Result<_>>()?;

    let areas: Vec<f64> = draws.iter().map(|d| d.area).collect();
    let slopes: Vec<f64> = draws.iter().map(|d| d.slope).collect();
    let (mean_area, var_area) = mean_var(&areas);
    let (mean_slope, var_slope) = mean_var(&slopes);
    let variance = noise.family.variance();
    let sigma = variance.sqrt();

    let mut sorted = areas;
    sorted.sort_by(f64::total_cmp);
    let ks = if sigma > 0.0 {
        Some(ks_statistic(&sorted, |a| {
            inference::area_cdf(a, n, sigma).expect("sigma > 0")
        }))
    } else {
        None
    };

    let r = realizations as f64;
    Ok(EnsembleSummary {
        n,
        realizations,
        noise_variance: variance,
        mean_area,
        var_area,
        theory_var_area: walk::tilt_norm_sq(n) * variance,
        mean_slope,
        var_slope,
        theory_slope_variance: inference::slope_variance(n, sigma),
        histogram: histogram(&sorted, binning),
        mean_zero_crossings: draws.iter().map(|d| d.walk_zeros as f64).sum::<f64>() / r,
        mode_zero_crossings: mode(draws.iter().map(|d| d.walk_zeros)),
        bridge_mean_zero_crossings: draws.iter().map(|d| d.bridge_zeros as f64).sum::<f64>() / r,
        bridge_mode_zero_crossings: mode(draws.iter().map(|d| d.bridge_zeros)),
        ks_statistic: ks,
    })
}

/// Walk-ratio slope versus least squares on a possibly irregular grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrregularComparison {
    pub grid_kind: GridKind,
    pub n: usize,
    /// Realizations kept (the slope lists have this length).
    pub realizations: usize,
    /// Realizations dropped because the grid's own area was degenerate.
    pub excluded: usize,
    pub dw_ratio_slopes: Vec<f64>,
    pub lls_slopes: Vec<f64>,
    /// Deviations are `|dw - lls| / max(1, |lls|)`.
    pub max_rel_dev: f64,
    pub mean_rel_dev: f64,
}

/// `A(y) / A(x)` with both areas from walks in index space.
pub fn area_ratio_slope(series: &SampleSeries) -> Result<Option<f64>> {
    let ax = walk::signed_area(&DataWalk::from_values(series.xs())?);
    let ay = walk::signed_area(&walk::build_walk(series)?);
    let scale: f64 = series.xs().iter().map(|x| x.abs()).sum::<f64>() * series.len() as f64;
    if !(ax > 1e-12 * scale) {
        return Ok(None);
    }
    Ok(Some(ay / ax))
}

/// Runs `realizations` draws on `grid` (a fresh Poisson grid per draw) and
/// compares the area-ratio slope with least squares.
pub fn compare_irregular(
    grid: &GridSpec,
    true_slope: f64,
    noise: &NoiseSpec,
    realizations: usize,
) -> Result<IrregularComparison> {
    grid.validate()?;
    if realizations == 0 {
        return Err(Error::InvalidGrid("realizations must be >= 1".into()));
    }
    let grid_seed = match grid.kind {
        GridKind::Poisson { seed, .. } => seed,
        _ => 0,
    };
    let pairs: Vec<Option<(f64, f64)>> = (0..realizations)
        .into_par_iter()
        .map(|i| -> Result<Option<(f64, f64)>> {
            let xs = make_grid_stream(grid, grid_seed, i as u64)?;
            let series = SeriesGenerator::new(noise, i as u64)?.series(xs, true_slope, 0.0)?;
            let lls = estimators::lls_slope_general(&series)?.slope;
            Ok(area_ratio_slope(&series)?.map(|dw| (dw, lls)))
        })
        .collect::<Result<_>>()?;

    let kept: Vec<(f64, f64)> = pairs.iter().flatten().copied().collect();
    let devs: Vec<f64> = kept
        .iter()
        .map(|(dw, lls)| (dw - lls).abs() / lls.abs().max(1.0))
        .collect();
    let mean_rel_dev = if devs.is_empty() {
        0.0
    } else {
        devs.iter().copied().collect::<NeumaierSum>().value() / devs.len() as f64
    };
    Ok(IrregularComparison {
        grid_kind: grid.kind.clone(),
        n: grid.n,
        realizations: kept.len(),
        excluded: realizations - kept.len(),
        dw_ratio_slopes: kept.iter().map(|p| p.0).collect(),
        lls_slopes: kept.iter().map(|p| p.1).collect(),
        max_rel_dev: devs.iter().copied().fold(0.0, f64::max),
        mean_rel_dev,
    })
}
