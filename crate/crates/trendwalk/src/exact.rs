//! Arithmetic-generic forms of the walk and slope formulas.
//!
//! Everything here is written against [`Field`], implemented for `f64` and
//! for [`BigRational`]. With rationals the identities between the walk
//! route and least squares hold with zero error, which separates algebra
//! from round-off. These forms sum naively; the production float path in
//! [`crate::walk`] and [`crate::estimators`] uses compensated sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

/// Number type usable by the generic formulas.
pub trait Field: Num + Clone + FromPrimitive {}

impl<T: Num + Clone + FromPrimitive> Field for T {}

fn from_usize<T: Field>(n: usize) -> T {
    T::from_usize(n).expect("usize representable")
}

fn sum<T: Field>(xs: impl IntoIterator<Item = T>) -> T {
    xs.into_iter().fold(T::zero(), |a, b| a + b)
}

pub fn mean<T: Field>(ys: &[T]) -> T {
    sum(ys.iter().cloned()) / from_usize(ys.len())
}

/// `z_1..=z_N` (no leading zero).
pub fn walk_positions<T: Field>(ys: &[T]) -> Vec<T> {
    let m = mean(ys);
    let mut acc = T::zero();
    ys.iter()
        .map(|y| {
            acc = acc.clone() + (y.clone() - m.clone());
            acc.clone()
        })
        .collect()
}

/// `-sum z_j`.
pub fn signed_area<T: Field>(ys: &[T]) -> T {
    T::zero() - sum(walk_positions(ys))
}

/// `N(N+1)/12`.
pub fn reference_area<T: Field>(n: usize) -> T {
    from_usize::<T>(n * (n + 1)) / from_usize(12)
}

/// Walk slope on the unit grid: `A(y) / (N(N+1)/12)`.
pub fn dw_slope_unit<T: Field>(ys: &[T]) -> T {
    signed_area(ys) / reference_area(ys.len())
}

/// `x_k = (k-1)/(N-1)`.
pub fn unit_grid<T: Field>(n: usize) -> Vec<T> {
    (0..n)
        .map(|k| from_usize::<T>(k) / from_usize(n - 1))
        .collect()
}

/// Textbook least-squares slope from raw sums.
pub fn lls_slope<T: Field>(xs: &[T], ys: &[T]) -> T {
    let n = from_usize::<T>(xs.len());
    let sx = sum(xs.iter().cloned());
    let sy = sum(ys.iter().cloned());
    let sxy = sum(xs.iter().zip(ys).map(|(x, y)| x.clone() * y.clone()));
    let sxx = sum(xs.iter().map(|x| x.clone() * x.clone()));
    (n.clone() * sxy - sx.clone() * sy) / (n * sxx - sx.clone() * sx)
}

/// Least-squares intercept `mean(y) - slope mean(x)`.
pub fn lls_intercept<T: Field>(xs: &[T], ys: &[T], slope: &T) -> T {
    mean(ys) - slope.clone() * mean(xs)
}

/// Closed form on the unit grid: `12(N-1)/(N(N+1)) sum y_k (x_k - 1/2)`.
pub fn lls_slope_equidistant<T: Field>(ys: &[T]) -> T {
    let n = ys.len();
    let half = T::one() / from_usize(2);
    let xs = unit_grid::<T>(n);
    let s = sum(ys
        .iter()
        .zip(xs)
        .map(|(y, x)| y.clone() * (x - half.clone())));
    from_usize::<T>(12 * (n - 1)) * s / from_usize(n * (n + 1))
}

/// `x~_k = (N+1)/2 - k`.
pub fn tilt<T: Field>(n: usize) -> Vec<T> {
    let c = from_usize::<T>(n + 1) / from_usize(2);
    (1..=n).map(|k| c.clone() - from_usize(k)).collect()
}

/// Both sides of the double-sum identity
/// `sum_k sum_{j<=k} (y_j - mean) = sum_k y_k ((N+1)/2 - k)`.
///
/// The left side is evaluated as a literal double loop.
pub fn double_sum_sides<T: Field>(ys: &[T]) -> (T, T) {
    let m = mean(ys);
    let mut lhs = T::zero();
    for k in 0..ys.len() {
        for y in &ys[..=k] {
            lhs = lhs + (y.clone() - m.clone());
        }
    }
    let rhs = sum(ys
        .iter()
        .zip(tilt::<T>(ys.len()))
        .map(|(y, t)| y.clone() * t));
    (lhs, rhs)
}

/// Exact check of the double-sum identity on rational inputs.
pub fn double_sum_identity_exact(ys: &[BigRational]) -> bool {
    let (l, r) = double_sum_sides(ys);
    l == r
}

/// Exact conversion of a finite float to a rational.
pub fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn two_point_sides() {
        let ys = vec![ratio(0, 1), ratio(1, 1)];
        let (l, r) = double_sum_sides(&ys);
        assert_eq!(l, ratio(-1, 2));
        assert_eq!(r, ratio(-1, 2));
    }

    #[test]
    fn constant_sides_zero() {
        let ys = vec![ratio(1, 1); 3];
        let (l, r) = double_sum_sides(&ys);
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn tilt_moments() {
        for n in 2..80usize {
            let t = tilt::<BigRational>(n);
            let s: BigRational = t.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
            assert!(s.is_zero());
            let ss: BigRational = t
                .iter()
                .map(|v| v * v)
                .fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(ss, ratio((n * n * n - n) as i64, 12));
        }
    }

    #[test]
    fn rational_slopes_agree() {
        let ys: Vec<BigRational> = [3, -1, 4, 1, -5, 9, 2, -6]
            .iter()
            .map(|&v| ratio(v, 7))
            .collect();
        let xs = unit_grid::<BigRational>(ys.len());
        let dw = dw_slope_unit(&ys);
        assert_eq!(dw, lls_slope(&xs, &ys));
        assert_eq!(dw, lls_slope_equidistant(&ys));
    }

    #[test]
    fn same_code_runs_on_floats() {
        let ys = [0.0, 0.5, 1.0];
        assert_eq!(signed_area(&ys), 1.0);
        assert_eq!(dw_slope_unit(&ys), 1.0);
    }
}
