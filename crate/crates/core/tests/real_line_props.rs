use proptest::prelude::*;
use qmeasure::real_line::{q_integral_real, Direction, IntervalUnion, Layered, MonotonePiece, PiecewiseMonotone, RealQMeasure};
use qmeasure::{Rational, Scalar};

fn point() -> impl Strategy<Value = Rational> {
    (0i64..=24).prop_map(|k| Rational::from_ratio(k, 24))
}

fn union() -> impl Strategy<Value = IntervalUnion<Rational>> {
    (prop::collection::vec((point(), point()), 0..4), any::<bool>()).prop_map(|(ps, one)| {
        let pieces = ps.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
        IntervalUnion::from_pieces(pieces, one)
    })
}

fn closed(a: f64, b: f64) -> IntervalUnion<f64> {
    IntervalUnion::closed(a, b).unwrap()
}

proptest! {
    #[test]
    fn de_morgan(a in union(), b in union()) {
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.intersection(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
    }

    #[test]
    fn associativity(a in union(), b in union(), c in union()) {
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
        prop_assert_eq!(a.intersection(&b).intersection(&c), a.intersection(&b.intersection(&c)));
    }

    #[test]
    fn lebesgue_is_additive(a in union(), b in union()) {
        prop_assert_eq!(a.union(&b).lebesgue() + a.intersection(&b).lebesgue(), a.lebesgue() + b.lebesgue());
    }

    #[test]
    fn destructive_agrees_with_lebesgue_below_the_shift(a in union(), s in 12i64..24) {
        let s = Rational::from_ratio(s, 24);
        let a = a.intersection(&IntervalUnion::half_open(Rational::from_i64(0), s).unwrap());
        let mu = RealQMeasure::DestructiveShift(s);
        prop_assert_eq!(mu.measure(&a).unwrap(), a.lebesgue());
    }

    #[test]
    fn integral_homogeneity_and_shift(n in 1i32..5, c in 0.0f64..3.0, d in 0.0f64..2.0, y in 0.1f64..1.0) {
        let tol = 1e-9;
        let dom = closed(0.0, y);
        let mu = RealQMeasure::QLebesgue;
        let f = PiecewiseMonotone::monomial(n as u32);
        let base = q_integral_real(&mu, &f, &dom, tol).unwrap().value;
        let scaled = q_integral_real(&mu, &f.scaled(c).unwrap(), &dom, tol).unwrap().value;
        prop_assert!((scaled - c * base).abs() <= 2.0 * tol * (1.0 + c), "{} vs {}", scaled, c * base);
        let piece = MonotonePiece::new(0.0, 1.0, Direction::Increasing, move |x| x.powi(n) + d, None);
        let shifted = PiecewiseMonotone::new("x^n+d", vec![piece]).unwrap();
        let lhs = q_integral_real(&mu, &shifted, &dom, tol).unwrap().value;
        let rhs = d * y * y + base;
        prop_assert!((lhs - rhs).abs() <= 2.0 * tol * (1.0 + d), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn layers_shrink_as_the_level_rises(n in 1u32..5, l1 in 0.0f64..1.0, l2 in 0.0f64..1.0) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let f = PiecewiseMonotone::monomial(n);
        let dom = IntervalUnion::full();
        let mu = RealQMeasure::QLebesgue;
        let a = mu.measure(&f.superlevel(lo, false, &dom).unwrap()).unwrap();
        let b = mu.measure(&f.superlevel(hi, false, &dom).unwrap()).unwrap();
        prop_assert!(b <= a + 1e-12);
    }
}
