use std::f64::consts::{PI, SQRT_2};

use spectral_lab::chamber::{
    doob_kernel, h_rho, h_u, killed_kernel, vandermonde_h, ChamberPoint, DomainFamily, KernelSpec, SimplexPoint,
};
use spectral_lab::quad::gl_panels;

/// `(u/√2, −u/√2)`: unit-speed coordinate on `H_2`.
fn h2(u: f64) -> Vec<f64> {
    vec![u / SQRT_2, -u / SQRT_2]
}

/// Point of `H_3` with gaps `p = y₁ − y₂`, `q = y₂ − y₃`; area element `dp dq/√3`.
fn h3(p: f64, q: f64) -> Vec<f64> {
    vec![(2.0 * p + q) / 3.0, (q - p) / 3.0, -(p + 2.0 * q) / 3.0]
}

fn upper(family: DomainFamily, t: f64, gap: f64) -> f64 {
    match family {
        DomainFamily::Simplex => 2.0 * PI,
        _ => gap + 6.0 * t + 14.0 * t.sqrt() + 2.0,
    }
}

fn integrate_n2(family: DomainFamily, t: f64, f: impl Fn(&[f64]) -> f64) -> f64 {
    let hi = upper(family, t, 3.0) / SQRT_2;
    gl_panels(|u| if u > 0.0 { f(&h2(u)) } else { 0.0 }, 0.0, hi, 60)
}

fn integrate_n3(family: DomainFamily, t: f64, f: impl Fn(&[f64]) -> f64 + Sync) -> f64 {
    let hi = upper(family, t, 2.0);
    let simplex = family == DomainFamily::Simplex;
    let outer = |p: f64| {
        let q_hi = if simplex { 2.0 * PI - p } else { hi };
        gl_panels(|q| f(&h3(p, q)), 0.0, q_hi, 24)
    };
    gl_panels(outer, 0.0, hi, 24) / 3f64.sqrt()
}

fn harmonic(family: DomainFamily, y: &[f64]) -> f64 {
    match family {
        DomainFamily::Chamber => vandermonde_h(&ChamberPoint::new(y.to_vec()).unwrap()),
        DomainFamily::ChamberDrift => h_rho(&ChamberPoint::new(y.to_vec()).unwrap()),
        DomainFamily::Simplex => h_u(&SimplexPoint::new(y.to_vec()).unwrap()),
    }
}

fn start(n: usize) -> Vec<f64> {
    if n == 2 {
        h2(1.3)
    } else {
        h3(1.1, 0.9)
    }
}

#[test]
fn doob_kernels_are_markov() {
    for family in DomainFamily::ALL {
        for n in [2, 3] {
            for t in [0.1, 0.5] {
                let spec = KernelSpec::new(family, n);
                let x = start(n);
                let q = |y: &[f64]| doob_kernel(&spec, t, &x, y).unwrap_or(0.0);
                let mass = if n == 2 { integrate_n2(family, t, q) } else { integrate_n3(family, t, q) };
                assert!((mass - 1.0).abs() < 1e-6, "{family:?} n={n} t={t}: {mass}");
            }
        }
    }
}

#[test]
fn killed_kernels_preserve_h() {
    for family in DomainFamily::ALL {
        for n in [2, 3] {
            for t in [0.1, 0.5] {
                let spec = KernelSpec::new(family, n);
                let domain = spec.domain().unwrap();
                let x = start(n);
                let g = |y: &[f64]| killed_kernel(&spec, t, &x, y).map_or(0.0, |p| p * harmonic(family, y));
                let lhs = if n == 2 { integrate_n2(family, t, g) } else { integrate_n3(family, t, g) };
                let rhs = (domain.eigenvalue() * t).exp() * harmonic(family, &x);
                assert!((lhs - rhs).abs() < 1e-6 * rhs.max(1.0), "{family:?} n={n} t={t}: {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn chapman_kolmogorov_n2() {
    let (s, t) = (0.2, 0.3);
    for family in DomainFamily::ALL {
        let spec = KernelSpec::new(family, 2);
        let (x, y) = (h2(1.0), h2(2.0));
        let lhs = integrate_n2(family, s + t, |z| {
            killed_kernel(&spec, s, &x, z).unwrap_or(0.0) * killed_kernel(&spec, t, z, &y).unwrap_or(0.0)
        });
        let rhs = killed_kernel(&spec, s + t, &x, &y).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "{family:?}: {lhs} vs {rhs}");
    }
}

/// Eigenfunction expansion on the segment `(0, √2π)` in the `H_2` coordinate.
fn simplex_n2_series(t: f64, u: f64, v: f64) -> f64 {
    let l = SQRT_2 * PI;
    (1..200)
        .map(|k| {
            let k = k as f64;
            let w = k * PI / l;
            (2.0 / l) * (-0.5 * w * w * t).exp() * (w * u).sin() * (w * v).sin()
        })
        .sum()
}

#[test]
fn simplex_n2_matches_sine_series() {
    let spec = KernelSpec::simplex(2);
    let c = SQRT_2 * PI / 2.0;
    for (t, u, v) in [(0.1, c, c), (0.5, 1.0, 3.0), (2.0, 0.4, 4.0)] {
        let lhs = killed_kernel(&spec, t, &h2(u), &h2(v)).unwrap();
        let rhs = simplex_n2_series(t, u, v);
        assert!((lhs - rhs).abs() < 1e-10, "t={t}: {lhs} vs {rhs}");
    }
}

#[test]
fn simplex_truncation_is_converged() {
    let x = h3(2.0, 2.5);
    let y = h3(1.5, 1.0);
    for t in [0.1, 1.0] {
        let k = spectral_lab::chamber::default_truncation(t);
        let a = killed_kernel(&KernelSpec::simplex(3).with_truncation(k), t, &x, &y).unwrap();
        let b = killed_kernel(&KernelSpec::simplex(3).with_truncation(k + 1), t, &x, &y).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn drifted_kernel_mean_follows_rho_far_from_walls() {
    let spec = KernelSpec::chamber_drift(2);
    let t = 1.0;
    let u0 = 20.0;
    let x = h2(u0);
    let mass = gl_panels(|u| doob_kernel(&spec, t, &x, &h2(u)).unwrap_or(0.0), 1e-9, 60.0, 80);
    let mean = gl_panels(|u| u * doob_kernel(&spec, t, &x, &h2(u)).unwrap_or(0.0), 1e-9, 60.0, 80) / mass;
    // ρ = (1, −1) has length √2 along the unit coordinate.
    let want = SQRT_2 * t;
    assert!(((mean - u0) - want).abs() < 0.05 * want, "{mean}");
}
