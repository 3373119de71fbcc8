//! On irregular sample positions the area-ratio slope is only an
//! approximation. Compare it with least squares on Poisson grids.

use trendwalk::ensemble;
use trendwalk::synth::{GridKind, GridSpec, NoiseSpec};

fn main() -> trendwalk::Result<()> {
    let noise = NoiseSpec::gaussian(0.0, 0.25, 5)?;
    for n in [10, 30, 100, 300] {
        for kind in [
            GridKind::EquidistantUnit,
            GridKind::Poisson { rate: 1.0, seed: 9 },
        ] {
            let label = format!("{kind:?}");
            let c = ensemble::compare_irregular(&GridSpec::new(kind, n)?, 1.0, &noise, 2000)?;
            println!(
                "n={n:4} {label:<40} mean rel dev {:.2e}  max {:.2e}  excluded {}",
                c.mean_rel_dev, c.max_rel_dev, c.excluded
            );
        }
    }
    Ok(())
}
