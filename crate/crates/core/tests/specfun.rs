use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use spectral_lab::specfun::{
    gamma_complex, k_zeros, k_zeros_with, macdonald_k, macdonald_k_scaled, recurrence_residuals, theta_phi,
    theta_phi_asymptotic_ln, theta_phi_ln, zero_count_asymptotic, zeta_complex, ZeroScan,
};

/// Trapezoid rule on `∫_0^∞ cosh(μs) e^{−x cosh s} ds`; the integrand is even
/// and analytic, so the error decays geometrically in `1/h`. Also returns
/// the integral of the modulus as the scale for relative errors.
fn k_trapezoid(mu: Complex64, x: f64) -> (Complex64, f64) {
    let h = 0.005;
    let f = |s: f64| (mu * s).cosh() * (-x * s.cosh()).exp();
    let (mut sum, mut abs) = (0.5 * f(0.0), 0.5 * f(0.0).norm());
    let mut k = 1;
    loop {
        let s = k as f64 * h;
        if mu.re.abs() * s - x * s.cosh() < -745.0 {
            break;
        }
        let v = f(s);
        sum += v;
        abs += (mu.re * s).cosh() * (-x * s.cosh()).exp();
        k += 1;
    }
    (sum * h, abs * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_matches_trapezoid_oracle(re in -3.0f64..3.0, im in -3.0f64..3.0, x in 0.5f64..10.0) {
        let mu = Complex64::new(re, im);
        let (want, scale) = k_trapezoid(mu, x);
        let got = macdonald_k(mu, x).unwrap();
        prop_assert!((got - want).norm() < 1e-10 * scale, "μ={mu} x={x}: {got} vs {want}");
    }

    #[test]
    fn k_is_even_in_order(re in -3.0f64..3.0, im in -3.0f64..3.0, x in 0.5f64..10.0) {
        let mu = Complex64::new(re, im);
        let a = macdonald_k(mu, x).unwrap();
        let b = macdonald_k(-mu, x).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
    }

    #[test]
    fn recurrences_hold(re in -3.0f64..3.0, im in -3.0f64..3.0, x in 0.5f64..10.0) {
        let (rec, der) = recurrence_residuals(Complex64::new(re, im), x).unwrap();
        prop_assert!(rec < 1e-10, "{rec}");
        prop_assert!(der < 1e-6, "{der}");
    }

    #[test]
    fn scaled_route_matches_direct(re in -3.0f64..3.0, im in -12.0f64..12.0, a in 0.5f64..3.0) {
        let mu = Complex64::new(re, im);
        let s = macdonald_k_scaled(mu, a).unwrap();
        let direct = macdonald_k(mu, 2.0 * a).unwrap() * s.log_scale.exp();
        let scale = s.scaled_value.norm().max(1e-6 * macdonald_k(Complex64::new(re, 0.0), 2.0 * a).unwrap().norm());
        prop_assert!((s.scaled_value - direct).norm() < 1e-7 * scale, "{} vs {direct}", s.scaled_value);
    }

    #[test]
    fn gamma_duplication(re in 0.1f64..4.0, im in -10.0f64..10.0) {
        let z = Complex64::new(re, im);
        let lhs = gamma_complex(z).unwrap() * gamma_complex(z + 0.5).unwrap();
        let rhs = Complex64::new(2.0, 0.0).powc(1.0 - 2.0 * z) * PI.sqrt() * gamma_complex(2.0 * z).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn zeta_functional_equation(re in -2.0f64..3.0, im in 1.0f64..30.0) {
        let s = Complex64::new(re, im);
        let lhs = zeta_complex(s).unwrap();
        let rhs = Complex64::new(2.0, 0.0).powc(s)
            * Complex64::new(PI, 0.0).powc(s - 1.0)
            * (s * PI / 2.0).sin()
            * gamma_complex(1.0 - s).unwrap()
            * zeta_complex(1.0 - s).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-8 * lhs.norm().max(1e-3), "s={s}: {lhs} vs {rhs}");
    }

    #[test]
    fn theta_phi_is_even_and_log_form_agrees(u in -1.5f64..1.5) {
        let a = theta_phi(u).unwrap();
        let b = theta_phi(-u).unwrap();
        // The sum at negative u cancels down from O(1) terms.
        prop_assert!((a - b).abs() < 1e-12 * a.abs().max(1e-3), "{a} vs {b}");
        let ln = theta_phi_ln(u).unwrap();
        prop_assert!((ln - theta_phi_ln(-u).unwrap()).abs() < 1e-14 * ln.abs().max(1.0));
        if u.abs() < 0.7 {
            prop_assert!((a.ln() - ln).abs() < 1e-10);
        }
    }
}

#[test]
fn theta_phi_asymptotics() {
    // ln Φ − asymptotic = ln(1 − 3/(2q)) + O(e^{−3q}) with q = πe^{2u}.
    for u in [1.0f64, 2.0, 3.0, 5.0] {
        let q = PI * (2.0 * u).exp();
        let gap = theta_phi_ln(u).unwrap() - theta_phi_asymptotic_ln(u);
        let want = (-1.5 / q).ln_1p();
        assert!((gap - want).abs() < 1e-12 * q.max(1.0), "u={u}: {gap} vs {want}");
    }
}

#[test]
fn zeros_are_stable_under_refinement() {
    let a = PI;
    let base = k_zeros(a, 60.0).unwrap();
    let fine = k_zeros_with(
        a,
        60.0,
        &ZeroScan {
            points_per_zero: 16.0,
            max_step: 0.125,
            ..ZeroScan::default()
        },
    )
    .unwrap();
    assert_eq!(base.count(), fine.count());
    for (x, y) in base.ordinates.iter().zip(&fine.ordinates) {
        assert!((x - y).abs() < 1e-8);
    }
    for z in &base.ordinates {
        let v = macdonald_k_scaled(Complex64::new(0.0, *z), a).unwrap().scaled_value.re;
        assert!(v.abs() < 1e-7, "K at {z}: {v}");
    }
    assert!(base.slopes.iter().all(|s| s.abs() > 1e-6));
}

#[test]
fn zero_counts_track_asymptotic() {
    let zs = k_zeros(PI, 60.0).unwrap();
    let mut prev = 0;
    for t in [10.0, 20.0, 30.0, 40.0, 50.0, 60.0] {
        let c = zs.count_below(t);
        assert!(c >= prev);
        prev = c;
        let asym = zero_count_asymptotic(t, PI);
        assert!((c as f64 - asym).abs() <= 2.0, "T={t}: {c} vs {asym}");
    }
}
