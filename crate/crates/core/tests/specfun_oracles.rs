use std::f64::consts::PI;

use complex_susy::grid;
use complex_susy::specfun::{erf_c, hermite, hyp1f1, hyp1f1_deriv, SeriesControl};
use complex_susy::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn complex_in(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b)).prop_filter("inside disk", move |z| z.norm() <= r)
}

fn away_from_poles(b: Complex64) -> bool {
    b.re > 0.0 || b.im.abs() > 0.1 || (b.re - b.re.round()).abs() > 0.1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kummer_transformation(a in complex_in(4.0), d in complex_in(4.0), z in complex_in(6.0)) {
        let b = a + d;
        prop_assume!(away_from_poles(b));
        let lhs = hyp1f1(a, b, z, &ctl()).unwrap();
        let rhs = z.exp() * hyp1f1(b - a, b, -z, &ctl()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-8 * lhs.norm().max(rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn erf_is_real_on_the_real_axis(x in -5.0f64..5.0) {
        let e = erf_c(c(x, 0.0), &ctl()).unwrap();
        prop_assert!(e.im.abs() < 1e-12);
        prop_assert!(e.re.abs() <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn derivative_matches_finite_differences(a in complex_in(3.0), d in complex_in(3.0), z in complex_in(4.0)) {
        let b = a + d;
        prop_assume!(away_from_poles(b) && away_from_poles(b + 1.0));
        let exact = hyp1f1_deriv(a, b, z, 1, &ctl()).unwrap();
        let (fd, _) = grid::derivatives(|t| hyp1f1(a, b, z + t, &ctl()), 0.0, 1e-2).unwrap();
        let scale = exact.norm().max(hyp1f1(a, b, z, &ctl()).unwrap().norm());
        prop_assert!((exact - fd).norm() < 1e-6 * scale, "{exact} vs {fd}");
    }

    #[test]
    fn hermite_derivative_identity(n in 1usize..12, z in complex_in(2.0)) {
        let (fd, _) = grid::derivatives(|t| Ok(hermite(n, z + t)), 0.0, 1e-2).unwrap();
        let exact = 2.0 * n as f64 * hermite(n - 1, z);
        prop_assert!((exact - fd).norm() < 1e-7 * exact.norm().max(1.0));
    }
}

#[test]
fn second_derivative_matches_finite_differences() {
    let (a, b, z) = (c(0.3, -0.8), c(1.7, 0.4), c(1.2, 2.1));
    let exact = hyp1f1_deriv(a, b, z, 2, &ctl()).unwrap();
    let (_, fd) = grid::derivatives(|t| hyp1f1(a, b, z + t, &ctl()), 0.0, 1e-2).unwrap();
    assert!((exact - fd).norm() < 1e-6 * exact.norm());
}

#[test]
fn derivatives_past_a_terminating_polynomial_vanish() {
    let z = c(0.4, 0.9);
    assert_eq!(hyp1f1_deriv(c(-2.0, 0.0), c(0.5, 0.0), z, 3, &ctl()).unwrap(), c(0.0, 0.0));
    // 1F1(-2, 1/2, z) = 1 - 4z + 4z^2/3, second derivative 8/3.
    let d2 = hyp1f1_deriv(c(-2.0, 0.0), c(0.5, 0.0), z, 2, &ctl()).unwrap();
    assert!((d2 - c(8.0 / 3.0, 0.0)).norm() < 1e-14);
}

fn hermite_coefficients(n: usize) -> Vec<i64> {
    // H_n(x) = sum_m (-1)^m n! / (m! (n-2m)!) (2x)^(n-2m)
    let fact = |k: usize| (1..=k as i64).product::<i64>();
    let mut coef = vec![0i64; n + 1];
    for m in 0..=n / 2 {
        let p = n - 2 * m;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        coef[p] = sign * fact(n) / (fact(m) * fact(p)) * (1i64 << p);
    }
    coef
}

#[test]
fn hermite_recurrence_matches_explicit_expansion() {
    for n in 0..=10 {
        let coef = hermite_coefficients(n);
        for x in -3i64..=3 {
            let exact: i64 = coef.iter().enumerate().map(|(p, a)| a * x.pow(p as u32)).sum();
            assert_eq!(hermite(n, c(x as f64, 0.0)), c(exact as f64, 0.0), "n = {n}, x = {x}");
        }
        let z = c(0.7, -1.3);
        let mut pow = c(1.0, 0.0);
        let mut direct = c(0.0, 0.0);
        for a in &coef {
            direct += *a as f64 * pow;
            pow *= z;
        }
        let h = hermite(n, z);
        assert!((h - direct).norm() < 1e-12 * direct.norm().max(1.0), "n = {n}");
    }
}

#[test]
fn erf_at_one_matches_independent_taylor_sum() {
    // erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 0..40 {
        if n > 0 {
            term *= -1.0 / n as f64;
        }
        sum += term / (2 * n + 1) as f64;
    }
    let oracle = 2.0 / PI.sqrt() * sum;
    let e = erf_c(c(1.0, 0.0), &ctl()).unwrap();
    assert!((e - c(oracle, 0.0)).norm() < 1e-10);
    assert!((oracle - 0.842_700_792_949_714_9).abs() < 1e-15);
}

#[test]
fn erf_tends_to_one_along_the_working_ray() {
    let s = Complex64::from_polar(1.0, PI / 12.0);
    let e = erf_c(s * 6.0, &ctl()).unwrap();
    assert!((e - 1.0).norm() < 1e-12);
}
