//! Linear trend estimation through pinned data walks.
//!
//! Subtract the sample mean from a sequence of samples and take running
//! sums: the result is a walk pinned to zero at both ends. Its negative
//! signed area `A(y) = -sum z_j` measures the trend, and dividing by the
//! area of a noise-free unit-slope line, `N(N+1)/12`, gives a slope that is
//! identical to the ordinary least-squares slope whenever the samples are
//! equidistant, whatever the noise distribution.
//!
//! ```
//! use trendwalk::{estimators, walk, SampleSeries};
//!
//! let series = SampleSeries::on_unit_grid(vec![0.1, 0.2, 0.7, 0.5, 1.1]).unwrap();
//! let w = walk::build_walk(&series).unwrap();
//! let slope = estimators::dw_slope(&series).unwrap();
//! let lls = estimators::lls_slope_general(&series).unwrap();
//! assert!((slope - lls.slope).abs() < 1e-12);
//! assert_eq!(w.positions()[0], 0.0);
//! ```
//!
//! Modules:
//! - [`walk`]: walk construction, signed area, reference area and parabola,
//!   zero crossings.
//! - [`estimators`]: walk slope, least-squares oracle, projection form,
//!   intercept.
//! - [`exact`]: the same formulas over any [`exact::Field`], including
//!   exact rationals.
//! - [`inference`]: area and slope variance, t-statistics, area density.
//! - [`synth`]: seeded synthetic series (ChaCha8).
//! - [`ensemble`]: Monte Carlo summaries and the irregular-grid study.
//! - [`report`]: CSV input, JSON reports, spec strings.
//! - [`cli`]: the `trendwalk` command line.

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod inference;
pub mod report;
pub mod series;
pub mod summation;
pub mod synth;
pub mod walk;

pub use error::{Error, Result};
pub use series::SampleSeries;
pub use walk::DataWalk;
