//! Positive harmonic functions and eigenfunctions on the chamber and the
//! alcove. All products run over `i < j`, so they are nonnegative on the
//! decreasing-ordered domains and vanish on the walls.

use super::{ChamberPoint, SimplexPoint};

fn pair_product(x: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let mut p = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            p *= f(x[i] - x[j]);
        }
    }
    p
}

/// Vandermonde `∏_{i<j}(x_i − x_j)`.
pub fn vandermonde_h(x: &ChamberPoint) -> f64 {
    pair_product(x.coords(), |d| d)
}

/// `∏_{i<j}(1 − e^{−2(y_i − y_j)})`, harmonic for Brownian motion with the
/// drift `(n−1, n−3, …, 1−n)` killed on the walls.
pub fn h_rho(y: &ChamberPoint) -> f64 {
    pair_product(y.coords(), |d| -(-2.0 * d).exp_m1())
}

/// `∏_{i<j} sinh(y_i − y_j)`.
pub fn h_sinh(y: &ChamberPoint) -> f64 {
    pair_product(y.coords(), f64::sinh)
}

/// `∏_{j<k} 2 sin((θ_j − θ_k)/2)`: the modulus of the Weyl denominator
/// `∏(e^{iθ_j} − e^{iθ_k})`, positive inside the alcove.
pub fn h_u(theta: &SimplexPoint) -> f64 {
    pair_product(theta.coords(), |d| 2.0 * (0.5 * d).sin())
}

pub(crate) fn vandermonde_raw(x: &[f64]) -> f64 {
    pair_product(x, |d| d)
}

pub(crate) fn h_rho_raw(x: &[f64]) -> f64 {
    pair_product(x, |d| -(-2.0 * d).exp_m1())
}

pub(crate) fn h_u_raw(x: &[f64]) -> f64 {
    pair_product(x, |d| 2.0 * (0.5 * d).sin())
}

/// The drift `(n−1, n−3, …, 1−n)`, sorted descending so it points into the
/// decreasing-ordered chamber.
pub fn rho_sorted(n: usize) -> Vec<f64> {
    (0..n).map(|i| (n as f64 - 1.0) - 2.0 * i as f64).collect()
}

/// The same vector in increasing order, `(−n+1, −n+3, …, n−1)`, which is the
/// drift of the Iwasawa coordinates.
pub fn rho_iwasawa(n: usize) -> Vec<f64> {
    let mut r = rho_sorted(n);
    r.reverse();
    r
}
