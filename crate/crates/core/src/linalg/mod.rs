//! Dense complex kernels for the small (n ≤ 8) matrices produced by the
//! samplers: Hermitian eigendecomposition by cyclic Jacobi sweeps, singular
//! values, the Iwasawa `NAK` factorization and the matrix exponential.

mod eigen;
mod expm;
mod iwasawa;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

pub use eigen::{hermitian_eigen, jacobi_eigh, singular_values, Eigen};
pub use expm::matrix_exp;
pub use iwasawa::{iwasawa, Iwasawa};

pub const MAX_DIM: usize = 8;

const HERMITIAN_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-9;
const UNITARY_TOL: f64 = 1e-9;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_DIM, "dimension {n} not supported");
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm()))
                .unwrap();
            if a[piv * n + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        let scale = self.norm1().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm()))
                .unwrap();
            if a[piv * n + col].norm() <= 1e-300 * scale {
                return Err(Error::Singular(0.0));
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    b.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
                for j in 0..n {
                    let v = b[col * n + j];
                    b[r * n + j] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let p = a[col * n + col];
            for j in 0..n {
                let mut acc = b[col * n + j];
                for k in col + 1..n {
                    acc -= a[col * n + k] * b[k * n + j];
                }
                b[col * n + j] = acc / p;
            }
        }
        Ok(Self { n, data: b })
    }

    /// Distance of `self · self*` from the identity (max entry).
    pub fn unitarity_defect(&self) -> f64 {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.n))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Traceless Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianTraceless(ComplexMatrix);

impl HermitianTraceless {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Invariant {
                invariant: "finiteness",
                defect: f64::INFINITY,
            });
        }
        let herm = m.max_abs_diff(&m.adjoint());
        if herm > HERMITIAN_TOL {
            return Err(Error::Invariant {
                invariant: "hermitian symmetry",
                defect: herm,
            });
        }
        let tr = m.trace().norm();
        if tr > HERMITIAN_TOL {
            return Err(Error::Invariant {
                invariant: "zero trace",
                defect: tr,
            });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Element of `SL_n(C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialLinear(ComplexMatrix);

impl SpecialLinear {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Invariant {
                invariant: "finiteness",
                defect: f64::INFINITY,
            });
        }
        let d = m.det();
        if d.norm() < 1e-12 {
            return Err(Error::Singular(d.norm()));
        }
        // Rounding in the determinant scales with the Hadamard bound.
        let hadamard: f64 = (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| m[(i, j)].norm_sqr()).sum::<f64>().sqrt())
            .product();
        let defect = (d - 1.0).norm() / hadamard.max(1.0);
        if defect > DET_TOL {
            return Err(Error::Invariant {
                invariant: "unit determinant",
                defect,
            });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Element of `SU(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialUnitary(ComplexMatrix);

impl SpecialUnitary {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Invariant {
                invariant: "finiteness",
                defect: f64::INFINITY,
            });
        }
        let u = m.unitarity_defect();
        if u > UNITARY_TOL {
            return Err(Error::Invariant {
                invariant: "unitarity",
                defect: u,
            });
        }
        let defect = (m.det() - 1.0).norm();
        if defect > DET_TOL {
            return Err(Error::Invariant {
                invariant: "unit determinant",
                defect,
            });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Nearest unitary matrix in Frobenius norm, by Newton–Schulz polar
/// iteration. Assumes `m` is already close to unitary.
pub fn polar_unitary(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let id = ComplexMatrix::identity(n);
    let mut u = m.clone();
    for _ in 0..8 {
        let gram = &u.adjoint() * &u;
        let defect = gram.max_abs_diff(&id);
        if defect < 1e-15 {
            break;
        }
        let corr = (&id.scale_re(3.0) - &gram).scale_re(0.5);
        u = &u * &corr;
    }
    u
}

/// Rescales by `det^{-1/n}` (principal branch) so the determinant is one.
pub fn normalize_det(m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.det();
    let f = d.powf(-1.0 / m.dim() as f64);
    m.scale(f)
}
