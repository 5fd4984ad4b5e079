//! Limit-route invariants: exact formula instantiation, convergence
//! direction, independence from the starting point, and the conjugate
//! x-form of the x + 1/x recurrence.

mod common;

use abelkit::bigfloat;
use abelkit::catalog::Catalog;
use abelkit::limit::{self, LimitFormula};
use abelkit::rational::rat;

#[test]
fn formula_fields_exact_for_printed_instances() {
    // The three instances with printed limit formulas; field-level equality
    // of exact rationals (the scale enters through its τ-th power).
    let f1 = LimitFormula::for_function(&Catalog::logistic()).unwrap();
    assert_eq!((f1.tau, f1.prefactor.clone()), (1, rat(1, 1)));
    assert_eq!(f1.scale_tau_power(), rat(1, 1));
    assert_eq!(f1.log_kappa, rat(1, 1));

    let f3 = LimitFormula::for_function(&Catalog::sin()).unwrap();
    assert_eq!((f3.tau, f3.prefactor.clone()), (2, rat(2, 1)));
    assert_eq!(f3.scale_tau_power(), rat(3, 1));
    assert_eq!(f3.log_kappa, rat(3, 10));

    let f8 = LimitFormula::for_function(&Catalog::x_over_1px2()).unwrap();
    assert_eq!((f8.tau, f8.prefactor.clone()), (2, rat(2, 1)));
    assert_eq!(f8.scale_tau_power(), rat(1, 2));
    assert_eq!(f8.log_kappa, rat(1, 8));
}

#[test]
fn extrapolation_error_shrinks_with_n() {
    let p = bigfloat::bits_for_digits(85);
    for base in Catalog::all() {
        let x = base.sample_point().to_bf(p);
        let order = 2; // 7 parameters; fits the shorter grids
        let v = |n: u64| limit::ml_value(&base, &x, n, order).unwrap().0;
        let a = v(1 << 12);
        let b = v(1 << 13);
        let c = v(1 << 14);
        let d1 = bigfloat::sub(&a, &b, p).abs();
        let d2 = bigfloat::sub(&b, &c, p).abs();
        assert!(
            d2.partial_cmp(&d1) == Some(std::cmp::Ordering::Less),
            "{}: |Δ| grew from {} to {}",
            base.name(),
            bigfloat::to_sci_string(&d1, 3),
            bigfloat::to_sci_string(&d2, 3)
        );
    }
}

#[test]
fn delta_estimate_independent_of_start_point() {
    let p = bigfloat::bits_for_digits(85);
    for base in [Catalog::arcsinh(), Catalog::x_over_sqrt1px()] {
        let x = bigfloat::from_i64(1, p);
        let tx = base.eval_forward(&x, p).unwrap();
        let at_x = limit::delta_estimate(&base, &x, 1 << 15).unwrap();
        let at_tx = limit::delta_estimate(&base, &tx, 1 << 15).unwrap();
        let diff = bigfloat::sub(&at_x.delta_estimate, &at_tx.delta_estimate, p).abs();
        let budget = bigfloat::add(&at_x.error_bar, &at_tx.error_bar, p);
        assert!(
            diff.partial_cmp(&budget) == Some(std::cmp::Ordering::Less),
            "{}: diff {} exceeds bars {}",
            base.name(),
            bigfloat::to_sci_string(&diff, 3),
            bigfloat::to_sci_string(&budget, 3)
        );
    }
}

#[test]
fn sequence_terms_approach_reference() {
    // s_n for sin at pi/2 approaches the printed principal value.
    let p = bigfloat::bits_for_digits(85);
    let base = Catalog::sin();
    let x = bigfloat::div(&bigfloat::pi(p), &bigfloat::from_i64(2, p), p);
    let reference = bigfloat::parse_decimal("1.4304553465286772447007001342639943626105", p);
    let s1 = limit::ml_sequence(&base, &x, 512).unwrap();
    let s2 = limit::ml_sequence(&base, &x, 4096).unwrap();
    let e1 = bigfloat::sub(&s1, &reference, p).abs();
    let e2 = bigfloat::sub(&s2, &reference, p).abs();
    assert!(e2.partial_cmp(&e1) == Some(std::cmp::Ordering::Less));
    assert!(e2.partial_cmp(&bigfloat::pow10_neg(1, p)) == Some(std::cmp::Ordering::Less));
}

#[test]
fn ml_value_reproduces_reference_points() {
    let p = bigfloat::bits_for_digits(85);
    let tol = bigfloat::pow10_neg(7, p);
    let cases: [(&str, Option<f64>, &str); 3] = [
        (
            "sin",
            None, // pi/2
            "1.4304553465286772447007001342639943626105251857497",
        ),
        (
            "x-over-1px2",
            Some(1.0),
            "0.8615711875687117305317813745882133018410101312362",
        ),
        (
            "logistic",
            Some(0.5),
            "1.7679937861361540504436344067811323310776814331319",
        ),
    ];
    for (name, x, reference) in cases {
        let base = Catalog::get(name).unwrap();
        let xv = match x {
            Some(v) => common::bf_from_f64(v, p),
            None => bigfloat::div(&bigfloat::pi(p), &bigfloat::from_i64(2, p), p),
        };
        let (est, _) = limit::ml_value(&base, &xv, 1 << 16, limit::ML_MODEL_ORDER).unwrap();
        let err = bigfloat::sub(&est, &bigfloat::parse_decimal(reference, p), p).abs();
        assert!(
            err.partial_cmp(&tol) == Some(std::cmp::Ordering::Less),
            "{}: err {}",
            name,
            bigfloat::to_sci_string(&err, 3)
        );
    }
}

#[test]
fn xplusinv_form_matches_conjugate_sequence() {
    // The x-form of the recurrence x ← x + 1/x heads to the same principal
    // value as the conjugate y-form (y = 1/x).
    let p = bigfloat::bits_for_digits(85);
    let x = bigfloat::from_i64(1, p);
    let reference = bigfloat::parse_decimal("0.8615711875687117305317813745882133018410", p);
    let direct = limit::ml_sequence_xplusinv(&x, 1 << 15).unwrap();
    let err = bigfloat::sub(&direct, &reference, p).abs();
    assert!(
        err.partial_cmp(&bigfloat::pow10_neg(2, p)) == Some(std::cmp::Ordering::Less),
        "x-form at n=2^15 off by {}",
        bigfloat::to_sci_string(&err, 3)
    );
    let conjugate = limit::ml_sequence(&Catalog::x_over_1px2(), &x, 1 << 15).unwrap();
    let gap = bigfloat::sub(&direct, &conjugate, p).abs();
    assert!(
        gap.partial_cmp(&bigfloat::pow10_neg(2, p)) == Some(std::cmp::Ordering::Less),
        "forms diverge: {}",
        bigfloat::to_sci_string(&gap, 3)
    );
}
