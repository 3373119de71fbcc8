//! Run the slope formulas over exact rationals: the walk slope and the
//! normal-equations slope are the same number, not just close.

use num_rational::BigRational;
use trendwalk::exact;

fn main() {
    let ys: Vec<BigRational> = [3, -7, 12, 5, 0, 19, 8, 22, 15]
        .iter()
        .map(|&v| exact::ratio(v, 4))
        .collect();
    let xs = exact::unit_grid::<BigRational>(ys.len());
    let dw = exact::dw_slope_unit(&ys);
    let lls = exact::lls_slope(&xs, &ys);
    println!("walk slope       {dw}");
    println!("least squares    {lls}");
    println!("equal: {}", dw == lls);
    let (lhs, rhs) = exact::double_sum_sides(&ys);
    println!("double-sum identity: {lhs} = {rhs}");
    println!(
        "reference area for n={}: {}",
        ys.len(),
        exact::reference_area::<BigRational>(ys.len())
    );

    let fys: Vec<f64> = [3.0, -7.0, 12.0, 5.0, 0.0, 19.0, 8.0, 22.0, 15.0]
        .iter()
        .map(|v| v / 4.0)
        .collect();
    println!("f64 walk slope   {}", exact::dw_slope_unit(&fys));
}
