use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use spectral_lab::linalg::{ComplexMatrix, HermitianTraceless, SpecialLinear, SpecialUnitary};
use spectral_lab::matrix_bm::{
    build_family, eigenangles, hermitian_eigenvalues, iwasawa_log_a, log_singular_values, sample_endpoints,
    sample_path, sample_snapshots, Family, TimeGrid, MAX_GROUP_STEP,
};
use spectral_lab::stats::{ks_test, mean_stderr};
use spectral_lab::Error;

fn top_eigenvalues(t: f64, seed: u64) -> Vec<f64> {
    let f = build_family("hermitian", 3).unwrap();
    let grid = TimeGrid::uniform(t, 1).unwrap();
    sample_endpoints(f.as_ref(), &grid, seed, 10_000, None)
        .unwrap()
        .into_iter()
        .map(|m| hermitian_eigenvalues(&HermitianTraceless::new(m).unwrap()).unwrap().coords()[0] / t.sqrt())
        .collect()
}

#[test]
fn hermitian_eigenvalues_scale_like_sqrt_t() {
    let base = top_eigenvalues(1.0, 1);
    for (t, seed) in [(0.5, 2), (2.0, 3)] {
        let ks = ks_test(&base, &top_eigenvalues(t, seed), 0.01);
        assert!(ks.passed, "t={t}: {ks:?}");
    }
}

#[test]
fn singular_values_and_iwasawa_share_the_drift() {
    let f = build_family("sl", 2).unwrap();
    let grid = TimeGrid::to_horizon(4.0, 0.01).unwrap();
    let snaps = sample_snapshots(f.as_ref(), &grid, 5, 2000, &[100, 400]).unwrap();
    // Both coordinates grow linearly with an O(1) offset, so the gap per unit
    // time shrinks.
    let gap_at = |k: usize, t: f64| {
        let gaps: Vec<f64> = snaps
            .iter()
            .map(|s| {
                let g = SpecialLinear::new(s[k].clone()).unwrap();
                let sv = log_singular_values(&g).unwrap().into_inner();
                let mut w = iwasawa_log_a(&g);
                w.sort_by(|a, b| b.total_cmp(a));
                sv.iter().zip(&w).map(|(a, b)| (a - b).abs()).sum::<f64>()
            })
            .collect();
        mean_stderr(&gaps).0 / t
    };
    let (early, late) = (gap_at(0, 1.0), gap_at(1, 4.0));
    assert!(late < 0.5 * early, "gap/t at t=4 ({late}) not well below t=1 ({early})");
}

#[test]
fn samplers_are_reproducible() {
    let grid = TimeGrid::to_horizon(0.2, 0.01).unwrap();
    for family in Family::ALL {
        let f = build_family(family.name(), 3).unwrap();
        let a = sample_path(f.as_ref(), &grid, 42, 3, None).unwrap();
        let b = sample_path(f.as_ref(), &grid, 42, 3, None).unwrap();
        let c = sample_path(f.as_ref(), &grid, 42, 4, None).unwrap();
        assert!(a.states == b.states, "{family:?}");
        assert!(a.states != c.states, "{family:?}");
        let ends = sample_endpoints(f.as_ref(), &grid, 42, 5, None).unwrap();
        assert!(&ends[3] == a.last(), "{family:?}: batch endpoint differs from the single path");
        let defect = a.states.iter().map(|g| f.defect(g)).fold(0.0, f64::max);
        assert!(defect < 1e-10, "{family:?}: {defect}");
    }
}

#[test]
fn group_samplers_reject_large_steps() {
    let grid = TimeGrid::uniform(2.0 * MAX_GROUP_STEP, 3).unwrap();
    for name in ["sl", "su"] {
        let f = build_family(name, 2).unwrap();
        assert!(matches!(
            sample_path(f.as_ref(), &grid, 1, 0, None),
            Err(Error::StepTooLarge { .. })
        ));
    }
    let h = build_family("hermitian", 2).unwrap();
    assert!(sample_path(h.as_ref(), &grid, 1, 0, None).is_ok());
}

fn alcove_point() -> impl Strategy<Value = Vec<f64>> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0.05f64..1.0, n).prop_map(move |w| {
            // n positive gaps around the circle; the first n − 1 place the
            // angles, the last keeps θ₁ − θ_n < 2π.
            let total: f64 = w.iter().sum();
            let gaps: Vec<f64> = w.iter().map(|g| 2.0 * PI * g / total).collect();
            let mut theta = vec![0.0];
            for g in &gaps[..n - 1] {
                let last = *theta.last().unwrap();
                theta.push(last - g);
            }
            let mean = theta.iter().sum::<f64>() / n as f64;
            theta.iter().map(|t| t - mean).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenangles_recover_alcove_points(theta in alcove_point(), phase in -PI..PI) {
        let n = theta.len();
        let d: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        // Conjugate by a fixed rotation so the diagonal structure is hidden.
        let (c, s) = (phase.cos(), phase.sin());
        let r = ComplexMatrix::from_fn(n, |i, j| match (i, j) {
            (0, 0) | (1, 1) => Complex64::new(c, 0.0),
            (0, 1) => Complex64::new(-s, 0.0),
            (1, 0) => Complex64::new(s, 0.0),
            _ if i == j => Complex64::new(1.0, 0.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let u = &(&r * &ComplexMatrix::from_diag(&d)) * &r.adjoint();
        let got = eigenangles(&SpecialUnitary::new(u).unwrap()).unwrap().into_inner();
        for (a, b) in got.iter().zip(&theta) {
            prop_assert!((a - b).abs() < 1e-9, "{got:?} vs {theta:?}");
        }
    }
}
