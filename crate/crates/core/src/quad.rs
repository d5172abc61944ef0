//! Quadrature: composite Gauss–Legendre panels for smooth (possibly
//! oscillatory) integrands, and double-exponential rules for endpoint
//! singularities and half-line integrals.

use std::f64::consts::PI;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use crate::{Error, Result};

pub const GL_ORDER: usize = 20;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let nf = order as f64;
    for i in 0..(order + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl_table() -> &'static (Vec<f64>, Vec<f64>) {
    static TABLE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    TABLE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Composite Gauss–Legendre over `panels` equal panels of [a, b].
pub fn gl_panels<T, F>(f: F, a: f64, b: f64, panels: usize) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let (nodes, weights) = gl_table();
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = T::default();
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let mut acc = T::default();
        for (x, w) in nodes.iter().zip(weights) {
            acc = acc + f(mid + half * x) * *w;
        }
        total = total + acc * half;
    }
    total
}

/// Composite Gauss–Legendre over arbitrary panel breakpoints.
pub fn gl_breaks<T, F>(f: F, breaks: &[f64]) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    breaks
        .windows(2)
        .fold(T::default(), |acc, w| acc + gl_panels(&f, w[0], w[1], 1))
}

const DE_MAX_LEVEL: usize = 12;

/// Generic double-exponential sum with level halving. `map(t)` returns the
/// abscissa and Jacobian weight, or `None` where the point degenerates.
fn de_sum(
    f: &dyn Fn(f64) -> f64,
    map: &dyn Fn(f64) -> Option<(f64, f64)>,
    t_max: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    let eval = |t: f64| match map(t) {
        Some((x, w)) if w > 0.0 => {
            let v = f(x) * w;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
        _ => 0.0,
    };
    let mut h = 0.5;
    let n0 = (t_max / h).ceil() as i64;
    let mut sum: f64 = (-n0..=n0).map(|k| eval(k as f64 * h)).sum();
    let mut estimate = sum * h;
    for _level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let n = (t_max / h).ceil() as i64;
        let odd: f64 = (-n..=n)
            .filter(|k| k.rem_euclid(2) == 1)
            .map(|k| eval(k as f64 * h))
            .sum();
        sum += odd;
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= abs_tol.max(rel_tol * next.abs()) {
            return Ok(estimate);
        }
    }
    Err(Error::NoConvergence {
        method: "double-exponential quadrature",
        iterations: DE_MAX_LEVEL,
        residual: estimate,
    })
}

/// Tanh–sinh rule on a finite interval; tolerates integrable endpoint
/// singularities (the integrand is never evaluated at the endpoints).
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let d = 0.5 * (b - a);
    let map = |t: f64| {
        let u = 0.5 * PI * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let one_minus = 2.0 * e / (1.0 + e);
        let x = if u >= 0.0 { b - d * one_minus } else { a + d * one_minus };
        if x <= a || x >= b {
            return None;
        }
        let ch = u.cosh();
        let w = d * 0.5 * PI * t.cosh() / (ch * ch);
        Some((x, w))
    };
    de_sum(&f, &map, 6.0, rel_tol, 1e-300)
}

/// Exp–sinh rule on [a, ∞).
pub fn exp_sinh(f: impl Fn(f64) -> f64, a: f64, rel_tol: f64) -> Result<f64> {
    let map = |t: f64| {
        let u = 0.5 * PI * t.sinh();
        if u > 700.0 {
            return None;
        }
        let e = u.exp();
        let x = a + e;
        if x <= a {
            return None;
        }
        Some((x, 0.5 * PI * t.cosh() * e))
    };
    de_sum(&f, &map, 4.5, rel_tol, 1e-300)
}
