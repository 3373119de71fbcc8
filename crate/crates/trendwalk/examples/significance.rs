//! Significance of a fitted trend: area and slope t-statistics for a noisy
//! series, and the fraction of pure-noise series that look significant.

use trendwalk::synth::{self, GridSpec, NoiseSpec, SeriesGenerator};
use trendwalk::{inference, SampleSeries};

fn main() -> trendwalk::Result<()> {
    let grid = GridSpec::unit(24)?;
    let noise = NoiseSpec::gaussian(0.0, 0.7, 11)?;
    let s = synth::gen_series(&grid, 1.2, 0.2, &noise)?;
    let r = inference::t_statistics(&s)?;
    println!("n={} area={:.3} slope={:.4}", r.n, r.area, r.slope);
    println!(
        "sigma (dof {}) {:.4}, sigma_A {:.3}",
        r.dof_area, r.sigma_noise, r.sigma_area
    );
    println!("t_A {:?}  t_LS {:?}", r.t_area, r.t_ls);

    let pure = NoiseSpec::gaussian(0.0, 1.0, 12)?;
    let trials = 20_000;
    let mut below = 0;
    for i in 0..trials {
        let ys = SeriesGenerator::new(&pure, i)?.noise(24);
        let t = inference::t_statistics(&SampleSeries::on_unit_grid(ys)?)?;
        if t.t_area.is_none_or(|t| t.abs() < 2.0) {
            below += 1;
        }
    }
    println!(
        "pure noise, |t_A| < 2 in {:.2}% of {trials} series",
        100.0 * below as f64 / trials as f64
    );
    Ok(())
}
