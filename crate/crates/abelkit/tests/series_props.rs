//! Property tests for the exact-series algebra.

mod common;

use abelkit::laurent::{integrate_with_log, laurent_reciprocal, LaurentSeries};
use abelkit::linear::LinearForm;
use abelkit::rational::Rational;
use abelkit::series::PowerSeries;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn series_strategy() -> impl Strategy<Value = PowerSeries<Rational>> {
    (
        6i64..=12,
        prop::collection::vec((0i64..=8, rat_strategy()), 0..6),
    )
        .prop_map(|(order, terms)| {
            PowerSeries::from_terms(
                terms.into_iter().filter(|(e, _)| *e <= order),
                order,
            )
        })
}

/// Unit-valuation series: zero constant term, nonzero linear term.
fn unit_series_strategy() -> impl Strategy<Value = PowerSeries<Rational>> {
    (
        5i64..=9,
        1i64..=5,
        prop::collection::vec((2i64..=6, rat_strategy()), 0..4),
    )
        .prop_map(|(order, lead, terms)| {
            let mut list = vec![(1i64, Rational::new(lead.into(), 1.into()))];
            list.extend(terms.into_iter().filter(|(e, _)| *e <= order));
            PowerSeries::from_terms(list, order)
        })
}

/// Coefficientwise equality through x^n.
fn eq_through(a: &PowerSeries<Rational>, b: &PowerSeries<Rational>, n: i64) {
    for e in 0..=n {
        assert_eq!(
            a.coefficient_at(e).unwrap(),
            b.coefficient_at(e).unwrap(),
            "coefficient x^{}",
            e
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_associative(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let left = a.add(&b).add(&c);
        let right = a.add(&b.add(&c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let left = a.mul(&b.add(&c)).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
        let through = left.order().min(right.order());
        eq_through(&left, &right, through);
    }

    #[test]
    fn multiplication_commutes(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn composition_associative(
        a in unit_series_strategy(),
        b in unit_series_strategy(),
        c in unit_series_strategy()
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        let through = left.order().min(right.order());
        eq_through(&left, &right, through);
    }

    #[test]
    fn reciprocal_multiplies_back_to_one(
        v in 2i64..=4,
        lead in prop::sample::select(vec![-3i64, -2, -1, 1, 2]),
        tail in prop::collection::vec((1i64..=6, rat_strategy()), 0..4),
    ) {
        let order = v + 8;
        let mut terms = vec![(v, Rational::new(lead.into(), 1.into()))];
        terms.extend(tail.into_iter().map(|(off, c)| (v + off, c)).filter(|(e, _)| *e <= order));
        // Deduplicate exponents by summing.
        let mut s = PowerSeries::zero(order);
        for (e, c) in terms {
            s = s.add(&PowerSeries::monomial(c, e, order));
        }
        prop_assume!(s.valuation() == Some(v));
        let r = laurent_reciprocal(&s, v).unwrap();
        // Convolve back: exactly 1 at x^0, exactly 0 elsewhere through N − v.
        for n in 0..=(order - v) {
            let mut acc = Rational::new(0.into(), 1.into());
            for (e, c) in r.iter() {
                let other = n - e;
                if (0..=s.order()).contains(&other) {
                    acc += c * s.coefficient_at(other).unwrap();
                }
            }
            let expect = if n == 0 {
                Rational::new(1.into(), 1.into())
            } else {
                Rational::new(0.into(), 1.into())
            };
            prop_assert_eq!(acc, expect, "convolution at x^{}", n);
        }
    }

    #[test]
    fn integrate_then_differentiate_is_identity(
        tau in 1i64..=3,
        coeffs in prop::collection::vec(rat_strategy(), 1..6),
    ) {
        // Build a reciprocal-grid input {−τ−1 + mτ}.
        let order = tau * coeffs.len() as i64;
        let terms: Vec<(i64, Rational)> = coeffs
            .into_iter()
            .enumerate()
            .map(|(m, c)| (-tau - 1 + tau * m as i64, c))
            .filter(|(e, _)| *e <= order)
            .collect();
        let d = LaurentSeries::from_terms(terms, order);
        let g = integrate_with_log(&d, tau).unwrap();
        let back = g.derivative();
        for (e, c) in d.iter() {
            prop_assert_eq!(&back.coefficient_at(e).unwrap(), c, "exponent {}", e);
        }
        for (e, c) in back.iter() {
            prop_assert_eq!(&d.coefficient_at(e).unwrap(), c, "exponent {}", e);
        }
    }

    #[test]
    fn linear_form_slope_zero_agrees_with_rational(
        a in series_strategy(),
        b in series_strategy(),
    ) {
        let al = a.lift::<LinearForm>();
        let bl = b.lift::<LinearForm>();
        let sum = a.add(&b);
        let sum_l = al.add(&bl);
        let prod = a.mul(&b).unwrap();
        let prod_l = al.mul(&bl).unwrap();
        for (e, c) in sum.iter() {
            prop_assert_eq!(sum_l.coefficient_at(e).unwrap(), LinearForm::from_rational(c.clone()));
        }
        for (e, c) in prod.iter() {
            prop_assert_eq!(prod_l.coefficient_at(e).unwrap(), LinearForm::from_rational(c.clone()));
        }
        prop_assert!(!sum_l.is_symbolic());
    }

    #[test]
    fn csv_round_trip(a in series_strategy()) {
        let csv = a.to_csv();
        let back = PowerSeries::parse_csv(&csv).unwrap();
        prop_assert_eq!(a, back);
    }
}
