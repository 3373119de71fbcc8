//! Build the pinned walk of a short series and compare it to the walk of a
//! noise-free line with the same slope.

use trendwalk::{estimators, walk, SampleSeries};

fn main() -> trendwalk::Result<()> {
    let ys = vec![0.3, -0.1, 0.9, 1.4, 0.8, 2.1, 2.0, 2.9, 3.1, 2.7, 3.9, 4.2];
    let series = SampleSeries::on_unit_grid(ys)?;
    let w = walk::build_walk(&series)?;
    let slope = estimators::dw_slope(&series)?;
    let mut parabola = vec![0.0];
    parabola.extend(walk::reference_parabola(series.len()));

    println!("mean removed: {:.4}", w.mean_removed());
    println!(" j        z_j   slope*ref_j");
    for (j, (z, r)) in w.positions().iter().zip(&parabola).enumerate() {
        println!("{j:2} {z:10.4} {:13.4}", slope * r * series.span());
    }
    println!(
        "signed area {:.4}, reference area {}",
        walk::signed_area(&w),
        walk::reference_area(series.len())?
    );
    println!(
        "interior zeros: raw {}, residual {}",
        walk::count_interior_zeros(&w),
        {
            let res = estimators::residual_walk(&series, slope)?;
            walk::count_interior_zeros(&res)
        }
    );
    Ok(())
}
