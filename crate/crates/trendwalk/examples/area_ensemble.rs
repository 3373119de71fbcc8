//! Monte Carlo ensemble of pure-noise walks: area variance against the
//! closed form, histogram of areas and zero-crossing statistics.

use trendwalk::ensemble;
use trendwalk::synth::NoiseSpec;

fn main() -> trendwalk::Result<()> {
    let noise = NoiseSpec::gaussian(0.0, 1.0, 2024)?;
    let s = ensemble::run_area_ensemble(24, &noise, 50_000)?;
    println!(
        "area variance {:.1} (theory {:.1})",
        s.var_area, s.theory_var_area
    );
    println!(
        "slope variance {:.4} (theory {:.4})",
        s.var_slope, s.theory_slope_variance
    );
    println!(
        "zero crossings: walk mean {:.2} mode {}, bridge mean {:.2} mode {}",
        s.mean_zero_crossings,
        s.mode_zero_crossings,
        s.bridge_mean_zero_crossings,
        s.bridge_mode_zero_crossings
    );
    if let Some(ks) = s.ks_statistic {
        println!("KS distance to the Gaussian limit: {ks:.4}");
    }
    let peak = *s.histogram.counts.iter().max().unwrap_or(&1) as f64;
    for (i, &c) in s.histogram.counts.iter().enumerate().step_by(4) {
        let bar = "#".repeat((60.0 * c as f64 / peak).round() as usize);
        println!("{:8.1} {bar}", s.histogram.edges[i]);
    }
    Ok(())
}
