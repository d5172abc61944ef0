use num_complex::Complex64;

use super::{ComplexMatrix, HermitianTraceless, SpecialLinear};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;
/// Off-diagonal Frobenius norm relative to the matrix norm at convergence.
const OFF_TOL: f64 = 1e-13;

/// Eigenvalues in descending order with the matching unitary eigenvector
/// matrix (columns are eigenvectors).
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi for a Hermitian matrix. Each rotation first removes the
/// phase of the pivot, then applies the real symmetric Jacobi rotation.
pub fn jacobi_eigh(m: &ComplexMatrix) -> Result<Eigen> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= OFF_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = (apq / r).conj(); // e^{-iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let vpp = Complex64::new(c, 0.0);
                let vpq = Complex64::new(s, 0.0);
                let vqp = phase * (-s);
                let vqq = phase * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * vpp + akq * vqp;
                    a[(k, q)] = akp * vpq + akq * vqq;
                    let (ukp, ukq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = ukp * vpp + ukq * vqp;
                    v[(k, q)] = ukp * vpq + ukq * vqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
                    a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        let off = off_diagonal(&a);
        if off > OFF_TOL * norm {
            return Err(Error::NoConvergence {
                method: "cyclic Jacobi",
                iterations: MAX_SWEEPS,
                residual: off,
            });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Spectral decomposition of a traceless Hermitian matrix. The eigenvector
/// matrix is rephased so that its determinant is one.
pub fn hermitian_eigen(h: &HermitianTraceless) -> Result<Eigen> {
    let mut e = jacobi_eigh(h.matrix())?;
    let n = e.vectors.dim();
    let d = e.vectors.det();
    let fix = (d / d.norm()).conj();
    for r in 0..n {
        e.vectors[(r, 0)] *= fix;
    }
    Ok(e)
}

/// Singular values, descending, as square roots of the eigenvalues of `g* g`.
pub fn singular_values(g: &SpecialLinear) -> Result<Vec<f64>> {
    let m = g.matrix();
    let d = m.det().norm();
    if d < 1e-12 {
        return Err(Error::Singular(d));
    }
    let gram = &m.adjoint() * m;
    let e = jacobi_eigh(&gram)?;
    Ok(e.values.iter().map(|&x| x.max(0.0).sqrt()).collect())
}
