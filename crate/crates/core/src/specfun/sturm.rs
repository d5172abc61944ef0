use serde::Serialize;

use crate::{Error, Result};

/// Number of eigenvalues returned by [`sturm_liouville_spectrum`].
pub const SPECTRUM_SIZE: usize = 5;
/// Largest relative eigenvalue shift tolerated between `m` and `2m` points.
const REFINEMENT_TOL: f64 = 0.01;

/// Tridiagonal finite-difference model of `−d²/dx² + e^{2x}` on `[y0, L]`
/// with Dirichlet ends and `m` interior points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SturmLiouville {
    pub y0: f64,
    pub length_end: f64,
    pub points: usize,
    pub step: f64,
    pub diag: Vec<f64>,
    pub off: f64,
}

impl SturmLiouville {
    pub fn new(y0: f64, l: f64, m: usize) -> Result<Self> {
        if !(l > y0) || m < 3 {
            return Err(Error::InvalidArgument("need L > y0 and at least 3 points".into()));
        }
        let h = (l - y0) / (m + 1) as f64;
        let diag = (1..=m)
            .map(|i| 2.0 / (h * h) + (2.0 * (y0 + i as f64 * h)).exp())
            .collect();
        Ok(Self {
            y0,
            length_end: l,
            points: m,
            step: h,
            diag,
            off: -1.0 / (h * h),
        })
    }

    /// Grid abscissa of interior point `i` (0-based).
    pub fn x(&self, i: usize) -> f64 {
        self.y0 + (i + 1) as f64 * self.step
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm sequence).
    pub fn count_below(&self, lambda: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for d in &self.diag[1..] {
            let prev = if q == 0.0 { f64::EPSILON * self.off.abs() } else { q };
            q = d - lambda - off2 / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` lowest eigenvalues by bisection.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        let mut hi = 1.0;
        while self.count_below(hi) < k {
            hi *= 2.0;
        }
        (0..k)
            .map(|j| {
                let (mut lo, mut up) = (0.0, hi);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + up);
                    if self.count_below(mid) > j {
                        up = mid;
                    } else {
                        lo = mid;
                    }
                    if up - lo <= 1e-14 * up {
                        break;
                    }
                }
                0.5 * (lo + up)
            })
            .collect()
    }

    /// `max |(Aψ)_i − λψ_i| / max |ψ|` for grid samples of a candidate
    /// eigenfunction.
    pub fn residual(&self, psi: &[f64], lambda: f64) -> f64 {
        let m = self.points;
        assert_eq!(psi.len(), m);
        let scale = psi.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let left = if i > 0 { psi[i - 1] } else { 0.0 };
            let right = if i + 1 < m { psi[i + 1] } else { 0.0 };
            let r = self.diag[i] * psi[i] + self.off * (left + right) - lambda * psi[i];
            worst = worst.max(r.abs());
        }
        worst / scale
    }
}

/// Lowest five Dirichlet eigenvalues of `−d²/dx² + e^{2x}` on `[y0, L]`,
/// checked against a grid with twice the points.
pub fn sturm_liouville_spectrum(y0: f64, l: f64, m: usize) -> Result<Vec<f64>> {
    if l < y0 + 10.0 {
        return Err(Error::InvalidArgument("interval must have length at least 10".into()));
    }
    if m < 2000 {
        return Err(Error::InvalidArgument(format!("need at least 2000 grid points, got {m}")));
    }
    let coarse = SturmLiouville::new(y0, l, m)?.lowest(SPECTRUM_SIZE);
    let fine = SturmLiouville::new(y0, l, 2 * m)?.lowest(SPECTRUM_SIZE);
    for (c, f) in coarse.iter().zip(&fine) {
        let shift = (c - f).abs() / f.abs();
        if shift > REFINEMENT_TOL {
            return Err(Error::Refinement { shift });
        }
    }
    Ok(fine)
}

/// Checks `(−D + ½ + eˣ)(D + ½ + eˣ) f = (−D² + e^{2x} + ¼) f` at the grid
/// points with central differences of step `h`; returns the largest
/// absolute residual.
pub fn dirac_factorization_check(f: &dyn Fn(f64) -> f64, grid: &[f64], h: f64) -> f64 {
    let d = |g: &dyn Fn(f64) -> f64, x: f64| (g(x + h) - g(x - h)) / (2.0 * h);
    let g = |x: f64| d(f, x) + (0.5 + x.exp()) * f(x);
    grid.iter()
        .map(|&x| {
            let lhs = -d(&g, x) + (0.5 + x.exp()) * g(x);
            let f2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            let rhs = -f2 + ((2.0 * x).exp() + 0.25) * f(x);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}
