use std::f64::consts::PI;

use serde::Serialize;

use crate::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Decreasing real vector with zero sum: a point of the closed Weyl chamber.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChamberPoint(Vec<f64>);

impl ChamberPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        check_common(&x)?;
        Ok(Self(x))
    }

    /// Removes the mean and sorts descending; for values that are a chamber
    /// point up to rounding.
    pub fn centered(mut x: Vec<f64>) -> Result<Self> {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        x.sort_by(|a, b| b.total_cmp(a));
        Self::new(x)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_interior(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }
}

/// Point of the alcove `θ₁ ≥ … ≥ θ_n`, `Σθ = 0`, `θ₁ − θ_n ≤ 2π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        check_common(&theta)?;
        let spread = theta[0] - theta[theta.len() - 1];
        if spread > 2.0 * PI + SUM_TOL {
            return Err(Error::InvalidArgument(format!(
                "angle spread {spread} exceeds 2π"
            )));
        }
        Ok(Self(theta))
    }

    /// Barycenter of the alcove.
    pub fn center(n: usize) -> Self {
        let theta = (0..n)
            .map(|i| 2.0 * PI * ((n - 1) as f64 / 2.0 - i as f64) / n as f64)
            .collect();
        Self(theta)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_interior(&self) -> bool {
        is_simplex_interior(&self.0)
    }
}

pub(crate) fn is_chamber_interior(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[0] > w[1])
}

pub(crate) fn is_simplex_interior(x: &[f64]) -> bool {
    is_chamber_interior(x) && x[0] - x[x.len() - 1] < 2.0 * PI
}

fn check_common(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coordinate".into()));
    }
    if x.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("coordinates not in decreasing order".into()));
    }
    let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let sum: f64 = x.iter().sum();
    if sum.abs() > SUM_TOL * scale {
        return Err(Error::InvalidArgument(format!("coordinate sum {sum} is not zero")));
    }
    Ok(())
}

/// Orthonormal coordinates of `H_n` (Helmert basis); maps `R^{n-1}` onto the
/// zero-sum hyperplane isometrically.
pub fn hyperplane_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let norm = ((k * (k + 1)) as f64).sqrt();
            (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(k as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ChamberPoint::new(vec![1.0, 0.0, -1.0]).unwrap().is_interior());
        assert!(!ChamberPoint::new(vec![1.0, 1.0, -2.0]).unwrap().is_interior());
        assert!(ChamberPoint::new(vec![0.0, 1.0, -1.0]).is_err());
        assert!(ChamberPoint::new(vec![1.0, 0.5]).is_err());
        assert!(SimplexPoint::new(vec![3.5, -3.5]).is_err());
        assert!(SimplexPoint::new(vec![PI, -PI]).is_ok());
    }

    #[test]
    fn center_is_interior() {
        for n in 2..=5 {
            let c = SimplexPoint::center(n);
            assert!(c.is_interior());
            assert!(c.coords().iter().sum::<f64>().abs() < 1e-12);
        }
        assert_eq!(SimplexPoint::center(2).coords(), &[PI / 2.0, -PI / 2.0]);
    }

    #[test]
    fn helmert_basis_is_orthonormal() {
        let b = hyperplane_basis(4);
        for i in 0..3 {
            assert!(b[i].iter().sum::<f64>().abs() < 1e-15);
            for j in 0..3 {
                let d: f64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }
}
