use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{matrix_exp, normalize_det, polar_unitary, ComplexMatrix, MAX_DIM};
use crate::{Error, Result};

/// Largest step accepted by the group-valued samplers.
pub const MAX_GROUP_STEP: f64 = 0.1;

/// The three matrix Brownian motions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Traceless Hermitian matrices, additive.
    Hermitian,
    /// `SL_n(C)`, stochastic exponential.
    Sl,
    /// `SU(n)`, stochastic exponential.
    Su,
}

impl Family {
    pub const ALL: [Family; 3] = [Self::Hermitian, Self::Sl, Self::Su];

    pub fn name(self) -> &'static str {
        match self {
            Self::Hermitian => "hermitian",
            Self::Sl => "sl",
            Self::Su => "su",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown matrix family `{name}`")))
    }
}

/// Lie-algebra valued Gaussian increment.
#[derive(Clone, Debug, PartialEq)]
pub struct LieIncrement {
    pub family: Family,
    pub n: usize,
    pub entries: ComplexMatrix,
}

/// Common interface of the matrix-valued Brownian motions.
pub trait MatrixFamily: Send + Sync {
    fn family(&self) -> Family;
    fn dim(&self) -> usize;
    /// Orthonormal basis of the Lie algebra for the family's inner product.
    fn basis(&self) -> &[ComplexMatrix];
    fn origin(&self) -> ComplexMatrix;
    /// Steps the state by one increment and restores the group constraint.
    fn advance(&self, state: &ComplexMatrix, dw: &LieIncrement) -> ComplexMatrix;
    /// Largest step the discretization accepts.
    fn max_step(&self) -> f64;
    /// Distance of `state` from the family's constraint set.
    fn defect(&self, state: &ComplexMatrix) -> f64;

    /// `√h Σ Z_k B_k` over the orthonormal basis.
    fn increment(&self, h: f64, rng: &mut dyn rand::RngCore) -> LieIncrement {
        let n = self.dim();
        let sd = h.sqrt();
        let mut m = ComplexMatrix::zeros(n);
        for b in self.basis() {
            let z: f64 = rng.sample(StandardNormal);
            let c = z * sd;
            for (dst, src) in m.as_mut_slice().iter_mut().zip(b.as_slice()) {
                *dst += src * c;
            }
        }
        LieIncrement {
            family: self.family(),
            n,
            entries: m,
        }
    }
}

fn unit(n: usize, i: usize, j: usize, v: Complex64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    m[(i, j)] = v;
    m
}

/// Helmert diagonals: orthonormal basis of traceless real diagonals.
fn helmert_diagonals(n: usize) -> Vec<ComplexMatrix> {
    (1..n)
        .map(|k| {
            let norm = ((k * (k + 1)) as f64).sqrt();
            let mut d = vec![0.0; n];
            d[..k].iter_mut().for_each(|v| *v = 1.0 / norm);
            d[k] = -(k as f64) / norm;
            ComplexMatrix::from_real_diag(&d)
        })
        .collect()
}

/// Orthonormal basis of traceless Hermitian matrices under `Tr(AB)`.
pub fn hermitian_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    let s = FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            out.push(&unit(n, i, j, Complex64::new(s, 0.0)) + &unit(n, j, i, Complex64::new(s, 0.0)));
            out.push(&unit(n, i, j, Complex64::new(0.0, s)) + &unit(n, j, i, Complex64::new(0.0, -s)));
        }
    }
    out.extend(helmert_diagonals(n));
    out
}

/// Orthonormal real basis of `sl_n(C)` under `Re Tr(AB*)`.
pub fn sl_basis(n: usize) -> Vec<ComplexMatrix> {
    let i1 = Complex64::new(0.0, 1.0);
    let mut out = Vec::with_capacity(2 * (n * n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(unit(n, i, j, Complex64::new(1.0, 0.0)));
                out.push(unit(n, i, j, i1));
            }
        }
    }
    for d in helmert_diagonals(n) {
        out.push(d.scale(i1));
        out.push(d);
    }
    out
}

/// Orthonormal basis of `su(n)` under `−Tr(AB)`.
pub fn su_basis(n: usize) -> Vec<ComplexMatrix> {
    hermitian_basis(n)
        .into_iter()
        .map(|b| b.scale(Complex64::new(0.0, 1.0)))
        .collect()
}

fn check_dim(n: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::InvalidArgument(format!("matrix size must be in 2..={MAX_DIM}, got {n}")));
    }
    Ok(())
}

pub struct HermitianFamily {
    n: usize,
    basis: Vec<ComplexMatrix>,
}

impl HermitianFamily {
    pub fn new(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            basis: hermitian_basis(n),
        })
    }
}

impl MatrixFamily for HermitianFamily {
    fn family(&self) -> Family {
        Family::Hermitian
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }
    fn origin(&self) -> ComplexMatrix {
        ComplexMatrix::zeros(self.n)
    }
    fn advance(&self, state: &ComplexMatrix, dw: &LieIncrement) -> ComplexMatrix {
        state + &dw.entries
    }
    fn max_step(&self) -> f64 {
        f64::INFINITY
    }
    fn defect(&self, state: &ComplexMatrix) -> f64 {
        state.max_abs_diff(&state.adjoint()).max(state.trace().norm())
    }
}

pub struct SlFamily {
    n: usize,
    basis: Vec<ComplexMatrix>,
}

impl SlFamily {
    pub fn new(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, basis: sl_basis(n) })
    }
}

impl MatrixFamily for SlFamily {
    fn family(&self) -> Family {
        Family::Sl
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }
    fn origin(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.n)
    }
    fn advance(&self, state: &ComplexMatrix, dw: &LieIncrement) -> ComplexMatrix {
        normalize_det(&(state * &matrix_exp(&dw.entries)))
    }
    fn max_step(&self) -> f64 {
        MAX_GROUP_STEP
    }
    fn defect(&self, state: &ComplexMatrix) -> f64 {
        (state.det() - 1.0).norm()
    }
}

pub struct SuFamily {
    n: usize,
    basis: Vec<ComplexMatrix>,
}

impl SuFamily {
    pub fn new(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, basis: su_basis(n) })
    }
}

impl MatrixFamily for SuFamily {
    fn family(&self) -> Family {
        Family::Su
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }
    fn origin(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.n)
    }
    fn advance(&self, state: &ComplexMatrix, dw: &LieIncrement) -> ComplexMatrix {
        normalize_det(&polar_unitary(&(state * &matrix_exp(&dw.entries))))
    }
    fn max_step(&self) -> f64 {
        MAX_GROUP_STEP
    }
    fn defect(&self, state: &ComplexMatrix) -> f64 {
        state.unitarity_defect().max((state.det() - 1.0).norm())
    }
}

/// Looks up a family by name.
pub fn build_family(name: &str, n: usize) -> Result<Box<dyn MatrixFamily>> {
    Ok(match Family::from_name(name)? {
        Family::Hermitian => Box::new(HermitianFamily::new(n)?),
        Family::Sl => Box::new(SlFamily::new(n)?),
        Family::Su => Box::new(SuFamily::new(n)?),
    })
}
