//! The walk slope against least squares, checked against an exact rational
//! oracle built directly from the float inputs.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;
use trendwalk::estimators::{self, TiltVector};
use trendwalk::exact::{self, to_rational};
use trendwalk::series::unit_grid;
use trendwalk::synth::{GridKind, GridSpec, NoiseFamily, NoiseSpec, SeriesGenerator};
use trendwalk::walk::{self, DataWalk};
use trendwalk::SampleSeries;

/// Normal-equations slope and intercept in exact arithmetic.
fn oracle(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let xs: Vec<BigRational> = xs.iter().map(|&x| to_rational(x)).collect();
    let ys: Vec<BigRational> = ys.iter().map(|&y| to_rational(y)).collect();
    let n = BigRational::from_integer(xs.len().into());
    let mx = xs.iter().fold(BigRational::zero(), |a, b| a + b) / &n;
    let my = ys.iter().fold(BigRational::zero(), |a, b| a + b) / &n;
    let sxy = xs
        .iter()
        .zip(&ys)
        .fold(BigRational::zero(), |a, (x, y)| a + (x - &mx) * (y - &my));
    let sxx = xs
        .iter()
        .fold(BigRational::zero(), |a, x| a + (x - &mx) * (x - &mx));
    let slope = sxy / sxx;
    let intercept = &my - &slope * &mx;
    (slope.to_f64().unwrap(), intercept.to_f64().unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn families() -> Vec<NoiseFamily> {
    vec![
        NoiseFamily::Gaussian {
            mean: 0.0,
            variance: 1.0,
        },
        NoiseFamily::Gaussian {
            mean: 3.0,
            variance: 0.2,
        },
        NoiseFamily::Beta {
            alpha: 5.0,
            beta: 1.0,
        },
        NoiseFamily::Uniform { lo: -2.0, hi: 7.0 },
        NoiseFamily::Discrete {
            values: vec![-1.0, 1.0],
            weights: vec![0.5, 0.5],
        },
        NoiseFamily::Discrete {
            values: vec![0.0, 10.0],
            weights: vec![0.9, 0.1],
        },
    ]
}

#[test]
fn beta_noise_matches_oracle() {
    let mut rng = trendwalk::synth::stream_rng(2024, 0);
    for case in 0..50u64 {
        let n = rng.random_range(2..=40);
        let spec = NoiseSpec::new(
            NoiseFamily::Beta {
                alpha: 5.0,
                beta: 1.0,
            },
            case,
        )
        .unwrap();
        let ys = SeriesGenerator::new(&spec, 0).unwrap().noise(n);
        let s = SampleSeries::on_unit_grid(ys).unwrap();
        let (slope, _) = oracle(s.xs(), s.ys());
        let dw = estimators::dw_slope(&s).unwrap();
        assert!(rel(dw, slope) <= 1e-10, "case {case}: {dw} vs {slope}");
    }
}

#[test]
fn every_family_every_grid() {
    for (fi, fam) in families().into_iter().enumerate() {
        for n in [2usize, 3, 5, 24, 77, 200] {
            for (gi, kind) in [
                GridKind::EquidistantUnit,
                GridKind::Equidistant {
                    x0: -4.0,
                    span: 9.0,
                },
                GridKind::Equidistant {
                    x0: 100.0,
                    span: 0.25,
                },
            ]
            .into_iter()
            .enumerate()
            {
                let grid = GridSpec::new(kind, n).unwrap();
                let noise = NoiseSpec::new(fam.clone(), (fi * 100 + gi) as u64).unwrap();
                let s = trendwalk::synth::gen_series(&grid, -2.5, 6.0, &noise).unwrap();
                let (slope, intercept) = oracle(s.xs(), s.ys());
                let dw = estimators::fit_dw(&s).unwrap();
                let lls = estimators::lls_slope_general(&s).unwrap();
                let proj = estimators::projection_slope(&s).unwrap();
                assert!(rel(dw.slope, slope) <= 1e-10, "fam {fi} n {n} grid {gi}");
                assert!(rel(lls.slope, slope) <= 1e-10);
                assert!(rel(proj, dw.slope) <= 1e-12);
                assert!(rel(dw.intercept, intercept) <= 1e-9 * (1.0 + s.mean_x().abs()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn walk_slope_equals_least_squares(
        ys in prop::collection::vec(-100f64..100.0, 2..120),
        slope in -10f64..10.0,
        intercept in -10f64..10.0,
    ) {
        let xs = unit_grid(ys.len());
        let ys: Vec<f64> = xs.iter().zip(&ys).map(|(x, e)| slope * x + intercept + e).collect();
        let s = SampleSeries::new(xs, ys).unwrap();
        let dw = estimators::fit_dw(&s).unwrap();
        let lls = estimators::lls_slope_general(&s).unwrap();
        let unit = estimators::lls_slope_equidistant(&s).unwrap();
        let proj = estimators::projection_slope(&s).unwrap();

        prop_assert!(rel(dw.slope, lls.slope) <= 1e-10);
        prop_assert!(rel(unit, lls.slope) <= 1e-12);
        prop_assert!(rel(proj, dw.slope) <= 1e-12);
        prop_assert!(rel(dw.intercept, lls.intercept) <= 1e-12 * (1.0 + lls.slope.abs()));

        let mean_r = dw.residuals.iter().sum::<f64>() / dw.residuals.len() as f64;
        let ymax = s.ys().iter().fold(0.0f64, |m, y| m.max(y.abs()));
        prop_assert!(mean_r.abs() <= 1e-10 * (ymax + 1.0));

        let rw = estimators::residual_walk(&s, dw.slope).unwrap();
        let bound = 1e-9 * s.ys().iter().map(|y| y.abs()).sum::<f64>();
        prop_assert!(walk::signed_area(&rw).abs() <= bound);
    }

    #[test]
    fn double_sum_identity_on_floats(ys in prop::collection::vec(-1e4f64..1e4, 2..100)) {
        prop_assert!(estimators::double_sum_identity_check(&ys));
    }

    #[test]
    fn double_sum_identity_exact(nums in prop::collection::vec(-1000i64..1000, 2..40), den in 1i64..50) {
        let ys: Vec<BigRational> = nums.iter().map(|&p| exact::ratio(p, den)).collect();
        prop_assert!(exact::double_sum_identity_exact(&ys));
        let xs = exact::unit_grid::<BigRational>(ys.len());
        let dw = exact::dw_slope_unit(&ys);
        prop_assert_eq!(&dw, &exact::lls_slope(&xs, &ys));
        prop_assert_eq!(&dw, &exact::lls_slope_equidistant(&ys));
        // residual walk annuls exactly
        let r: Vec<BigRational> = ys.iter().zip(&xs).map(|(y, x)| y - &dw * x).collect();
        prop_assert!(exact::signed_area(&r).is_zero());
        // intercept from the mean residual
        let mean_r = exact::mean(&r);
        prop_assert_eq!(mean_r, exact::lls_intercept(&xs, &ys, &dw));
    }
}

#[test]
fn thousand_random_identity_checks() {
    let mut rng = trendwalk::synth::stream_rng(77, 0);
    for _ in 0..1000 {
        let n = rng.random_range(2..=100);
        let ys: Vec<f64> = (0..n).map(|_| rng.random_range(-50.0..50.0)).collect();
        assert!(estimators::double_sum_identity_check(&ys));
    }
}

#[test]
fn tilt_projection_matches_area() {
    let mut rng = trendwalk::synth::stream_rng(5, 0);
    for _ in 0..200 {
        let n = rng.random_range(2..=60);
        let ys: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let t = TiltVector::new(n);
        let area = walk::signed_area(&DataWalk::from_values(&ys).unwrap());
        let scale: f64 = ys.iter().map(|y| y.abs()).sum::<f64>() * n as f64;
        assert!((area + t.dot(&ys)).abs() <= 1e-13 * scale);
    }
}

#[test]
fn exact_oracle_rejects_irregular_grid_for_walk_slope() {
    let xs = vec![0.0, 0.1, 0.5, 0.55, 1.0];
    let s = SampleSeries::new(xs, vec![0.0, 1.0, 0.3, 2.0, 1.0]).unwrap();
    assert!(estimators::dw_slope(&s).is_err());
    let (slope, _) = oracle(s.xs(), s.ys());
    assert!(rel(estimators::lls_slope_general(&s).unwrap().slope, slope) < 1e-14);
    // the exact oracle itself is sign-correct
    let t: BigRational = to_rational(slope);
    assert!(t.is_positive());
}
