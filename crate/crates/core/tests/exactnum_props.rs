use fock_core::exactnum::{
    det_exact, gaussian, parse_rational, rational_to_decimal, series_exp, series_quotient,
    ExactMatrix, GaussianRational, Rational, TruncatedSeries,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(a, b)| gaussian(a, b))
}

fn square_pair() -> impl Strategy<Value = (ExactMatrix, ExactMatrix)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(small_gaussian(), n * n),
            prop::collection::vec(small_gaussian(), n * n),
        )
            .prop_map(move |(a, b)| {
                (ExactMatrix::new(n, n, a).unwrap(), ExactMatrix::new(n, n, b).unwrap())
            })
    })
}

fn series_no_constant(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), order).prop_map(move |c| {
        TruncatedSeries::from_coeffs(std::iter::once(Rational::zero()).chain(c), order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn det_is_multiplicative((a, b) in square_pair()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(det_exact(&ab).unwrap(), det_exact(&a).unwrap() * det_exact(&b).unwrap());
    }

    #[test]
    fn exp_turns_sums_into_products(
        (a, b) in (1usize..=8).prop_flat_map(|k| (series_no_constant(k), series_no_constant(k)))
    ) {
        let lhs = series_exp(&a.add(&b).unwrap()).unwrap();
        let rhs = series_exp(&a).unwrap().mul(&series_exp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_undoes_product(
        a in series_no_constant(6),
        tail in prop::collection::vec(small_rational(), 6),
        c0 in (1i64..=5, 1i64..=5),
    ) {
        let d0 = Rational::new(c0.0.into(), c0.1.into());
        let d = TruncatedSeries::from_coeffs(std::iter::once(d0).chain(tail), 6);
        let e = series_exp(&a).unwrap();
        prop_assert_eq!(series_quotient(&e.mul(&d).unwrap(), &d).unwrap(), e);
    }

    #[test]
    fn rationals_stay_normalized(xs in prop::collection::vec(small_rational(), 1..12)) {
        let mut acc = Rational::one();
        for (k, x) in xs.iter().enumerate() {
            acc = match k % 3 {
                0 => &acc * x + Rational::one(),
                1 => &acc - x,
                _ if !x.is_zero() => &acc / x,
                _ => acc,
            };
            prop_assert!(acc.denom().is_positive());
            prop_assert!(acc.numer().gcd(acc.denom()) == BigInt::one() || acc.is_zero());
        }
    }

    #[test]
    fn decimal_round_trip_is_close(p in -100000i64..100000, q in 1i64..1000) {
        let r = Rational::new(p.into(), q.into());
        let s = rational_to_decimal(&r, 15);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - p as f64 / q as f64).abs() <= 1e-12 * (1.0 + (p as f64 / q as f64).abs()));
        prop_assert!(parse_rational(&s).is_err());
    }
}

#[test]
fn mixed_orders_are_refused() {
    let a = TruncatedSeries::one(3);
    let b = TruncatedSeries::one(4);
    assert!(a.add(&b).is_err());
    assert!(a.mul(&b).is_err());
}
