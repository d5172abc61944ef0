use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{macdonald_k_scaled, SCALED_MAX_IM};
use crate::{Error, Result};

/// Zeros `y_k` of `y ↦ K_{iy}(2a)` on `(0, T]`, increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroList {
    pub a: f64,
    pub ordinates: Vec<f64>,
    pub search_bound: f64,
    /// Derivative of the scaled function at each zero.
    pub slopes: Vec<f64>,
}

impl ZeroList {
    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.iter().take_while(|&&y| y <= t).count()
    }
}

/// Scan controls for [`k_zeros_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroScan {
    /// Grid points per expected zero spacing `π / log(y/a)`.
    pub points_per_zero: f64,
    /// Largest grid step where the spacing estimate is not informative.
    pub max_step: f64,
    /// Bisection stops at this bracket width.
    pub tolerance: f64,
}

impl Default for ZeroScan {
    fn default() -> Self {
        Self {
            points_per_zero: 8.0,
            max_step: 0.25,
            tolerance: 1e-9,
        }
    }
}

/// `e^{πy/2} K_{iy}(2a)`, real for real `y`.
pub fn scaled_k_imaginary(y: f64, a: f64) -> Result<f64> {
    Ok(macdonald_k_scaled(Complex64::new(0.0, y), a)?.scaled_value.re)
}

/// All zeros of `y ↦ K_{iy}(2a)` in `(0, T]` with the default scan.
pub fn k_zeros(a: f64, t_max: f64) -> Result<ZeroList> {
    k_zeros_with(a, t_max, &ZeroScan::default())
}

pub fn k_zeros_with(a: f64, t_max: f64, scan: &ZeroScan) -> Result<ZeroList> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    if !(t_max > 0.0 && t_max <= SCALED_MAX_IM) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_max,
            range: "(0, 120]",
        });
    }
    let f = |y: f64| scaled_k_imaginary(y, a);
    let step_at = |y: f64| {
        let rate = (y / a).ln();
        if rate > 0.0 {
            (std::f64::consts::PI / (scan.points_per_zero * rate)).min(scan.max_step)
        } else {
            scan.max_step
        }
    };
    let mut ordinates = Vec::new();
    let mut slopes = Vec::new();
    let mut y0 = 0.0;
    let mut f0 = f(y0)?;
    while y0 < t_max {
        let step = step_at(y0);
        if step < 1e-12 {
            return Err(Error::Resolution {
                lo: y0,
                hi: y0 + step,
                reason: "scan step underflow".into(),
            });
        }
        let y1 = (y0 + step).min(t_max);
        let f1 = f(y1)?;
        if f1 == 0.0 {
            ordinates.push(y1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            ordinates.push(bisect(&f, y0, y1, f0, scan.tolerance)?);
        }
        y0 = y1;
        f0 = f1;
    }
    for &z in &ordinates {
        let h = 1e-5;
        slopes.push((f(z + h)? - f(z - h)?) / (2.0 * h));
    }
    Ok(ZeroList {
        a,
        ordinates,
        search_bound: t_max,
        slopes,
    })
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(T/π) log(T/a) − T/π`.
pub fn zero_count_asymptotic(t: f64, a: f64) -> f64 {
    let r = t / std::f64::consts::PI;
    r * (t / a).ln() - r
}
