use proptest::prelude::*;
use spectral_lab::xi::{
    count_zeros, count_zeros_with, xi_critical, xi_phi_integral, xi_product_real, xi_product_scaled, xi_real_axis,
    xi_star, xi_star_direct, CountScan, ZeroTarget,
};

/// Ordinates of the first five nontrivial zeta zeros.
const ZETA_ZEROS: [f64; 5] = [14.134_725_142, 21.022_039_639, 25.010_857_580, 30.424_876_126, 32.935_061_588];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree_on_the_critical_line(z in 0.0f64..30.0) {
        let a = xi_phi_integral(z);
        let (v, scale) = xi_product_scaled(z).unwrap();
        let b = v * (-scale).exp();
        // |ξ| decays like z^{7/4} e^{−πz/4}.
        let tol = 1e-9 * (1.0 + z).powi(2) * (-std::f64::consts::FRAC_PI_4 * z).exp();
        prop_assert!((a - b).abs() < tol, "z={z}: {a} vs {b}");
    }

    #[test]
    fn xi_star_matches_its_integral(z in -20.0f64..20.0) {
        let a = xi_star(z).unwrap();
        let b = xi_star_direct(z);
        prop_assert!((a - b).abs() < 1e-10 * xi_star(0.0).unwrap(), "z={z}: {a} vs {b}");
    }

    #[test]
    fn real_axis_matches_product(s in 1.2f64..8.0) {
        let a = xi_real_axis(s).unwrap();
        prop_assert!((a - xi_product_real(s).unwrap()).abs() < 1e-10 * a);
    }

    #[test]
    fn real_axis_reflects(s in 0.0f64..1.0) {
        let a = xi_real_axis(s).unwrap();
        prop_assert!((a - xi_real_axis(1.0 - s).unwrap()).abs() < 1e-12 * a);
    }
}

#[test]
fn zeros_match_known_ordinates() {
    let rep = count_zeros(ZeroTarget::Xi, 34.0).unwrap();
    assert_eq!(rep.n, Some(5));
    for (got, want) in rep.xi_zeros.iter().zip(ZETA_ZEROS) {
        assert!((got - want).abs() < 1e-7, "{got} vs {want}");
    }
    for z in ZETA_ZEROS {
        assert!(xi_critical(z).unwrap().abs() < 1e-7 * xi_critical(z - 1.0).unwrap().abs());
    }
}

#[test]
fn counts_are_monotone_and_stable_under_refinement() {
    let fine = CountScan {
        points_per_zero: 16.0,
        max_step: 0.25,
        ..CountScan::default()
    };
    let mut prev = (0, 0);
    for r in [20.0, 40.0, 60.0, 80.0] {
        let a = count_zeros(ZeroTarget::Both, r).unwrap();
        let b = count_zeros_with(ZeroTarget::Both, r, &fine).unwrap();
        assert_eq!((a.n, a.n_star), (b.n, b.n_star), "r={r}");
        let cur = (a.n.unwrap(), a.n_star.unwrap());
        assert!(cur.0 >= prev.0 && cur.1 >= prev.1);
        prev = cur;
        assert!(a.xi_star_slopes.iter().all(|s| s.abs() > 1e-8));
    }
}

#[test]
fn counting_rejects_large_radii() {
    assert!(count_zeros(ZeroTarget::Xi, 150.0).is_err());
    assert!(count_zeros(ZeroTarget::Xi, 0.0).is_err());
}
