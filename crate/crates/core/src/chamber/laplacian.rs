use rand::Rng;
use serde::Serialize;

use super::domain::{simplex_eigenvalue_formula, simplex_ground_eigenvalue};
use super::harmonic::h_u_raw;
use crate::rng::path_rng;
use crate::{Error, Result};

/// Finite-difference step for the Laplacian.
pub const LAPLACIAN_STEP: f64 = 1e-4;
const SAMPLE_POINTS: usize = 20;

/// Outcome of measuring `(½Δh)/h` for the alcove eigenfunction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletEigenCheck {
    pub n: usize,
    /// `(n − n³)/6`.
    pub claimed: f64,
    /// `−n(n²−1)/24`.
    pub ground: f64,
    /// Mean of the measured ratios.
    pub measured: f64,
    /// `max |(½Δh)/h − claimed|` over the sample points.
    pub residual: f64,
    /// `max |(½Δh)/h − ground|`.
    pub ground_residual: f64,
}

/// `(½Δh)/h` for `h = h_u` at `theta`, by second-order central differences.
pub fn half_laplacian_ratio(theta: &[f64], step: f64) -> f64 {
    let n = theta.len();
    let h0 = h_u_raw(theta);
    let mut p = theta.to_vec();
    let mut lap = 0.0;
    for i in 0..n {
        p[i] = theta[i] + step;
        let up = h_u_raw(&p);
        p[i] = theta[i] - step;
        let down = h_u_raw(&p);
        p[i] = theta[i];
        lap += (up - 2.0 * h0 + down) / (step * step);
    }
    0.5 * lap / h0
}

/// Random alcove point whose wall gaps all exceed `margin · 2π/n`.
fn interior_point(n: usize, rng: &mut impl Rng, margin: f64) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().ln()).collect();
        let total: f64 = w.iter().sum();
        let gaps: Vec<f64> = w.iter().map(|v| 2.0 * std::f64::consts::PI * v / total).collect();
        if gaps.iter().any(|&g| g < margin * 2.0 * std::f64::consts::PI / n as f64) {
            continue;
        }
        let mut theta = vec![0.0; n];
        for i in 1..n {
            theta[i] = theta[i - 1] - gaps[i - 1];
        }
        let mean = theta.iter().sum::<f64>() / n as f64;
        theta.iter_mut().for_each(|t| *t -= mean);
        return theta;
    }
}

/// Measures the eigenvalue of `½Δ` on `h_u` at 20 random interior points.
pub fn dirichlet_eigen_check(n: usize, seed: u64) -> Result<DirichletEigenCheck> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("eigenvalue check supports n ∈ {{2, 3, 4}}, got {n}")));
    }
    let claimed = simplex_eigenvalue_formula(n);
    let ground = simplex_ground_eigenvalue(n);
    let mut rng = path_rng(seed, n as u64);
    let ratios: Vec<f64> = (0..SAMPLE_POINTS)
        .map(|_| half_laplacian_ratio(&interior_point(n, &mut rng, 0.2), LAPLACIAN_STEP))
        .collect();
    let max_dev = |target: f64| ratios.iter().map(|r| (r - target).abs()).fold(0.0, f64::max);
    Ok(DirichletEigenCheck {
        n,
        claimed,
        ground,
        measured: ratios.iter().sum::<f64>() / ratios.len() as f64,
        residual: max_dev(claimed),
        ground_residual: max_dev(ground),
    })
}
