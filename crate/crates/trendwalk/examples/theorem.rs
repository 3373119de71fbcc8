//! The walk slope and the least-squares slope agree on equidistant samples
//! for any noise law. Checks a handful of noise families side by side.

use trendwalk::estimators;
use trendwalk::synth::{self, GridKind, GridSpec, NoiseFamily, NoiseSpec};

fn main() -> trendwalk::Result<()> {
    let families = [
        NoiseFamily::Gaussian {
            mean: 0.0,
            variance: 1.0,
        },
        NoiseFamily::Beta {
            alpha: 5.0,
            beta: 1.0,
        },
        NoiseFamily::Uniform { lo: -2.0, hi: 2.0 },
        NoiseFamily::Discrete {
            values: vec![-1.0, 3.0],
            weights: vec![0.75, 0.25],
        },
    ];
    let grid = GridSpec::new(
        GridKind::Equidistant {
            x0: -3.0,
            span: 7.5,
        },
        60,
    )?;
    for (i, family) in families.into_iter().enumerate() {
        let noise = NoiseSpec::new(family, i as u64)?;
        let s = synth::gen_series(&grid, 1.3, -0.4, &noise)?;
        let dw = estimators::fit_dw(&s)?;
        let lls = estimators::lls_slope_general(&s)?;
        let proj = estimators::projection_slope(&s)?;
        println!(
            "{:<60} dw {:+.12} lls {:+.12} projection {:+.12} intercepts {:+.6}/{:+.6}",
            format!("{:?}", noise.family),
            dw.slope,
            lls.slope,
            proj,
            dw.intercept,
            lls.intercept
        );
    }
    Ok(())
}
