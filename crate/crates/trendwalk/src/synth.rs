//! Seeded synthetic series: `y_k = slope x_k + intercept + n_k`.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`). A stream
//! is identified by `(seed, stream index)`, so realization `i` of an
//! ensemble is reproducible on its own, independent of scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{weighted::WeightedIndex, Beta, Distribution, Exp, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{unit_grid, SampleSeries};

/// Noise distribution family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NoiseFamily {
    Gaussian { mean: f64, variance: f64 },
    Beta { alpha: f64, beta: f64 },
    Uniform { lo: f64, hi: f64 },
    Discrete { values: Vec<f64>, weights: Vec<f64> },
}

impl NoiseFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidNoise(m));
        match self {
            NoiseFamily::Gaussian { mean, variance } => {
                if !mean.is_finite() || !variance.is_finite() || *variance < 0.0 {
                    return bad(format!(
                        "gaussian needs finite mean and variance >= 0, got {mean}, {variance}"
                    ));
                }
            }
            NoiseFamily::Beta { alpha, beta } => {
                if !(*alpha > 0.0 && *beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
                    return bad(format!("beta needs alpha, beta > 0, got {alpha}, {beta}"));
                }
            }
            NoiseFamily::Uniform { lo, hi } => {
                if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                    return bad(format!("uniform needs lo < hi, got {lo}, {hi}"));
                }
            }
            NoiseFamily::Discrete { values, weights } => {
                if values.is_empty() || values.len() != weights.len() {
                    return bad("discrete needs equally many values and weights".into());
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return bad("discrete values must be finite".into());
                }
                if weights.iter().any(|w| !(*w >= 0.0)) {
                    return bad("discrete weights must be nonnegative".into());
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return bad(format!("discrete weights must sum to 1, got {total}"));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match self {
            NoiseFamily::Gaussian { mean, .. } => *mean,
            NoiseFamily::Beta { alpha, beta } => alpha / (alpha + beta),
            NoiseFamily::Uniform { lo, hi } => 0.5 * (lo + hi),
            NoiseFamily::Discrete { values, weights } => {
                values.iter().zip(weights).map(|(v, w)| v * w).sum()
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            NoiseFamily::Gaussian { variance, .. } => *variance,
            NoiseFamily::Beta { alpha, beta } => {
                let s = alpha + beta;
                alpha * beta / (s * s * (s + 1.0))
            }
            NoiseFamily::Uniform { lo, hi } => (hi - lo) * (hi - lo) / 12.0,
            NoiseFamily::Discrete { values, weights } => {
                let m = self.mean();
                values
                    .iter()
                    .zip(weights)
                    .map(|(v, w)| w * (v - m) * (v - m))
                    .sum()
            }
        }
    }
}

/// A noise family plus the seed of its stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    #[serde(flatten)]
    pub family: NoiseFamily,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(family: NoiseFamily, seed: u64) -> Result<Self> {
        family.validate()?;
        Ok(Self { family, seed })
    }

    pub fn gaussian(mean: f64, variance: f64, seed: u64) -> Result<Self> {
        Self::new(NoiseFamily::Gaussian { mean, variance }, seed)
    }

    pub fn sampler(&self) -> Result<NoiseSampler> {
        NoiseSampler::new(&self.family)
    }
}

/// A ready-to-draw distribution for one [`NoiseFamily`].
#[derive(Debug, Clone)]
pub enum NoiseSampler {
    Constant(f64),
    Gaussian(Normal<f64>),
    Beta(Beta<f64>),
    Uniform(Uniform<f64>),
    Discrete {
        values: Vec<f64>,
        index: WeightedIndex<f64>,
    },
}

impl NoiseSampler {
    pub fn new(family: &NoiseFamily) -> Result<Self> {
        family.validate()?;
        let err = |e: &dyn std::fmt::Display| Error::InvalidNoise(e.to_string());
        Ok(match family {
            NoiseFamily::Gaussian { mean, variance } if *variance == 0.0 => {
                NoiseSampler::Constant(*mean)
            }
            NoiseFamily::Gaussian { mean, variance } => {
                NoiseSampler::Gaussian(Normal::new(*mean, variance.sqrt()).map_err(|e| err(&e))?)
            }
            NoiseFamily::Beta { alpha, beta } => {
                NoiseSampler::Beta(Beta::new(*alpha, *beta).map_err(|e| err(&e))?)
            }
            NoiseFamily::Uniform { lo, hi } => {
                NoiseSampler::Uniform(Uniform::new(*lo, *hi).map_err(|e| err(&e))?)
            }
            NoiseFamily::Discrete { values, weights } => NoiseSampler::Discrete {
                values: values.clone(),
                index: WeightedIndex::new(weights).map_err(|e| err(&e))?,
            },
        })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            NoiseSampler::Constant(c) => *c,
            NoiseSampler::Gaussian(d) => d.sample(rng),
            NoiseSampler::Beta(d) => d.sample(rng),
            NoiseSampler::Uniform(d) => d.sample(rng),
            NoiseSampler::Discrete { values, index } => values[index.sample(rng)],
        }
    }

    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        for v in out {
            *v = self.draw(rng);
        }
    }
}

/// ChaCha8 seeded from `seed`, positioned on stream `stream`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridKind {
    /// `x_k = (k-1)/(n-1)`.
    EquidistantUnit,
    Equidistant {
        x0: f64,
        span: f64,
    },
    /// Exponential waiting times, rescaled onto `[0, 1]`.
    Poisson {
        rate: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(flatten)]
    pub kind: GridKind,
    pub n: usize,
}

impl GridSpec {
    pub fn new(kind: GridKind, n: usize) -> Result<Self> {
        let spec = Self { kind, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn unit(n: usize) -> Result<Self> {
        Self::new(GridKind::EquidistantUnit, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidGrid(format!(
                "n must be >= 2, got {}",
                self.n
            )));
        }
        match self.kind {
            GridKind::EquidistantUnit => Ok(()),
            GridKind::Equidistant { x0, span } => {
                if !x0.is_finite() || !(span > 0.0) || !span.is_finite() {
                    Err(Error::InvalidGrid(format!(
                        "need finite x0 and span > 0, got {x0}, {span}"
                    )))
                } else {
                    Ok(())
                }
            }
            GridKind::Poisson { rate, .. } => {
                if !(rate > 0.0) || !rate.is_finite() {
                    Err(Error::InvalidGrid(format!("rate must be > 0, got {rate}")))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn is_equidistant(&self) -> bool {
        !matches!(self.kind, GridKind::Poisson { .. })
    }
}

/// Abscissas for a grid spec. Poisson grids draw from stream 0 of their seed.
pub fn make_grid(spec: &GridSpec) -> Result<Vec<f64>> {
    match spec.kind {
        GridKind::Poisson { seed, .. } => make_grid_stream(spec, seed, 0),
        _ => make_grid_stream(spec, 0, 0),
    }
}

/// Like [`make_grid`], but Poisson draws come from `(seed, stream)`.
pub fn make_grid_stream(spec: &GridSpec, seed: u64, stream: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = spec.n;
    Ok(match spec.kind {
        GridKind::EquidistantUnit => unit_grid(n),
        GridKind::Equidistant { x0, span } => {
            let d = (n - 1) as f64;
            (0..n).map(|k| x0 + span * (k as f64 / d)).collect()
        }
        GridKind::Poisson { rate, .. } => {
            let exp = Exp::new(rate).map_err(|e| Error::InvalidGrid(e.to_string()))?;
            let mut rng = stream_rng(seed, stream);
            loop {
                let mut acc = 0.0;
                let mut cum = Vec::with_capacity(n);
                cum.push(0.0);
                for _ in 1..n {
                    acc += exp.sample(&mut rng);
                    cum.push(acc);
                }
                let total = acc;
                let xs: Vec<f64> = cum.iter().map(|c| c / total).collect();
                if xs.windows(2).all(|w| w[1] > w[0]) {
                    break xs;
                }
            }
        }
    })
}

/// Holds one PRNG stream and draws noise from it.
#[derive(Debug, Clone)]
pub struct SeriesGenerator {
    sampler: NoiseSampler,
    rng: ChaCha8Rng,
}

impl SeriesGenerator {
    pub fn new(noise: &NoiseSpec, stream: u64) -> Result<Self> {
        Ok(Self {
            sampler: noise.sampler()?,
            rng: stream_rng(noise.seed, stream),
        })
    }

    pub fn noise(&mut self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        self.sampler.fill(&mut self.rng, &mut out);
        out
    }

    pub fn series(&mut self, xs: Vec<f64>, slope: f64, intercept: f64) -> Result<SampleSeries> {
        let noise = self.noise(xs.len());
        let ys = xs
            .iter()
            .zip(noise)
            .map(|(x, e)| slope * x + intercept + e)
            .collect();
        SampleSeries::new(xs, ys)
    }
}

/// `y_k = slope x_k + intercept + n_k` with noise from stream 0 of the
/// noise seed.
pub fn gen_series(
    grid: &GridSpec,
    slope: f64,
    intercept: f64,
    noise: &NoiseSpec,
) -> Result<SampleSeries> {
    let xs = make_grid(grid)?;
    SeriesGenerator::new(noise, 0)?.series(xs, slope, intercept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_grid_spec() {
        let g = make_grid(&GridSpec::unit(24).unwrap()).unwrap();
        assert_eq!((g[0], g[23]), (0.0, 1.0));
        assert_eq!(
            make_grid(&GridSpec::unit(2).unwrap()).unwrap(),
            vec![0.0, 1.0]
        );
    }

    #[test]
    fn poisson_grid_reproducible() {
        let spec = GridSpec::new(
            GridKind::Poisson {
                rate: 1.0,
                seed: 99,
            },
            10,
        )
        .unwrap();
        let a = make_grid(&spec).unwrap();
        let b = make_grid(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!((a[0], a[9]), (0.0, 1.0));
        assert!(a.windows(2).all(|w| w[1] > w[0]));
        let other = make_grid(
            &GridSpec::new(
                GridKind::Poisson {
                    rate: 1.0,
                    seed: 100,
                },
                10,
            )
            .unwrap(),
        )
        .unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn invalid_specs() {
        assert!(GridSpec::unit(1).is_err());
        assert!(GridSpec::new(GridKind::Equidistant { x0: 0.0, span: 0.0 }, 5).is_err());
        assert!(GridSpec::new(
            GridKind::Poisson {
                rate: -1.0,
                seed: 0
            },
            5
        )
        .is_err());
        assert!(NoiseSpec::gaussian(0.0, -1.0, 0).is_err());
        assert!(NoiseSpec::new(
            NoiseFamily::Beta {
                alpha: 0.0,
                beta: 1.0
            },
            0
        )
        .is_err());
        assert!(NoiseSpec::new(NoiseFamily::Uniform { lo: 1.0, hi: 1.0 }, 0).is_err());
        assert!(NoiseSpec::new(
            NoiseFamily::Discrete {
                values: vec![1.0, 2.0],
                weights: vec![0.5, 0.6]
            },
            0
        )
        .is_err());
        assert!(NoiseSpec::new(
            NoiseFamily::Discrete {
                values: vec![1.0, 2.0],
                weights: vec![-0.5, 1.5]
            },
            0
        )
        .is_err());
    }

    #[test]
    fn same_seed_same_bits() {
        let grid = GridSpec::unit(24).unwrap();
        let noise = NoiseSpec::gaussian(0.0, 1.0, 7).unwrap();
        let a = gen_series(&grid, 1.0, 0.0, &noise).unwrap();
        let b = gen_series(&grid, 1.0, 0.0, &noise).unwrap();
        let bits = |s: &SampleSeries| s.ys().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        let c = gen_series(&grid, 1.0, 0.0, &NoiseSpec::gaussian(0.0, 1.0, 8).unwrap()).unwrap();
        assert_ne!(bits(&a), bits(&c));
    }

    #[test]
    fn zero_variance_gives_exact_line() {
        let grid = GridSpec::unit(13).unwrap();
        let s = gen_series(&grid, 2.5, -1.0, &NoiseSpec::gaussian(0.0, 0.0, 1).unwrap()).unwrap();
        for (x, y) in s.xs().iter().zip(s.ys()) {
            assert_eq!(*y, 2.5 * x - 1.0);
        }
    }

    #[test]
    fn gaussian_moments() {
        let spec = NoiseSpec::gaussian(0.3, 2.0, 11).unwrap();
        let mut g = SeriesGenerator::new(&spec, 0).unwrap();
        let draws = g.noise(1_000_000);
        let n = draws.len() as f64;
        let m = draws.iter().sum::<f64>() / n;
        let v = draws.iter().map(|d| (d - m) * (d - m)).sum::<f64>() / (n - 1.0);
        assert!((m - 0.3).abs() <= 4.0 * 2f64.sqrt() / n.sqrt());
        assert!((v - 2.0).abs() / 2.0 < 0.02);
    }

    #[test]
    fn beta_moments_and_support() {
        let fam = NoiseFamily::Beta {
            alpha: 5.0,
            beta: 1.0,
        };
        let spec = NoiseSpec::new(fam.clone(), 3).unwrap();
        let draws = SeriesGenerator::new(&spec, 0).unwrap().noise(1_000_000);
        assert!(draws.iter().all(|&d| d > 0.0 && d < 1.0));
        let m = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!((m - 5.0 / 6.0).abs() / (5.0 / 6.0) < 0.02);
        assert!((fam.mean() - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn discrete_draws_from_values() {
        let fam = NoiseFamily::Discrete {
            values: vec![-1.0, 1.0],
            weights: vec![0.25, 0.75],
        };
        assert_eq!(fam.mean(), 0.5);
        assert_eq!(fam.variance(), 0.75);
        let spec = NoiseSpec::new(fam, 5).unwrap();
        let draws = SeriesGenerator::new(&spec, 0).unwrap().noise(10_000);
        assert!(draws.iter().all(|&d| d == -1.0 || d == 1.0));
    }
}
