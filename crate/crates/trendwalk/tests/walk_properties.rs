use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use trendwalk::exact::to_rational;
use trendwalk::walk::{self, DataWalk};

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 2..150)
}

fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale.max(a.abs()).max(b.abs())
}

proptest! {
    #[test]
    fn walk_is_pinned(ys in values()) {
        let w = DataWalk::from_values(&ys).unwrap();
        prop_assert_eq!(w.positions()[0], 0.0);
        prop_assert_eq!(w.positions().len(), ys.len() + 1);
        let last = w.positions()[ys.len()];
        prop_assert!(last.abs() <= DataWalk::pinning_tolerance(&ys), "z_N = {}", last);
        let step_sum: f64 = trendwalk::summation::sum(w.steps());
        prop_assert!((step_sum - last).abs() <= DataWalk::pinning_tolerance(&ys));
        for j in 1..=ys.len() {
            let d = w.positions()[j] - w.positions()[j - 1];
            prop_assert!((d - w.steps()[j - 1]).abs() <= 1e-12 * (1.0 + w.steps()[j - 1].abs() + w.positions()[j].abs()));
        }
    }

    #[test]
    fn shift_invariance(ys in values(), c in -1e3f64..1e3) {
        let a = DataWalk::from_values(&ys).unwrap();
        let shifted: Vec<f64> = ys.iter().map(|y| y + c).collect();
        let b = DataWalk::from_values(&shifted).unwrap();
        let scale = ys.iter().map(|y| y.abs()).fold(0.0, f64::max) + c.abs();
        for (p, q) in a.positions().iter().zip(b.positions()) {
            // 1e-12 absolute at unit data scale
            prop_assert!((p - q).abs() <= 1e-12 * scale.max(1.0) * ys.len() as f64 / 10.0 + 1e-12);
        }
    }

    #[test]
    fn scale_equivariance(ys in values(), c in -50f64..50.0, k in -20i32..20) {
        let a = DataWalk::from_values(&ys).unwrap();
        // powers of two scale every rounding step exactly
        let p2 = 2f64.powi(k);
        let b = DataWalk::from_values(&ys.iter().map(|y| p2 * y).collect::<Vec<_>>()).unwrap();
        for (p, q) in a.positions().iter().zip(b.positions()) {
            prop_assert_eq!(p2 * p, *q);
        }
        let b = DataWalk::from_values(&ys.iter().map(|y| c * y).collect::<Vec<_>>()).unwrap();
        let scale = ys.iter().map(|y| y.abs()).sum::<f64>() * c.abs();
        for (p, q) in a.positions().iter().zip(b.positions()) {
            prop_assert!(rel_close(c * p, *q, 1e-12, scale * 1e-3));
        }
    }

    #[test]
    fn area_is_additive(pair in (2usize..150).prop_flat_map(|n| (
        prop::collection::vec(-1e3f64..1e3, n),
        prop::collection::vec(-1e3f64..1e3, n),
    ))) {
        let (a, b) = pair;
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let area = |v: &[f64]| walk::signed_area(&DataWalk::from_values(v).unwrap());
        let (aa, ab, asum) = (area(&a), area(&b), area(&sum));
        let n = a.len() as f64;
        let scale = (aa.abs() + ab.abs()).max(n * n * 1e-3);
        prop_assert!((asum - (aa + ab)).abs() <= 1e-12 * scale, "{} vs {}", asum, aa + ab);
    }
}

#[test]
fn reference_area_matches_parabola_exactly() {
    for n in 2..=500usize {
        let closed = walk::reference_area(n).unwrap();
        let closed = BigRational::new((*closed.numer()).into(), (*closed.denom()).into());
        let parabola = walk::reference_parabola_exact(n);
        let area = -parabola.iter().fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(closed, area, "n={n}");
        assert!(parabola[n - 1].is_zero());
        // float parabola equals the exact one after rounding
        for (f, e) in walk::reference_parabola(n).iter().zip(&parabola) {
            let diff = to_rational(*f) - e;
            assert!(diff.abs() <= to_rational(1e-12) * (e.abs() + to_rational(1.0)));
        }
        assert_eq!(walk::reference_parabola(n)[n - 1], 0.0);
    }
}
