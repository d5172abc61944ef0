use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chamber::{ChamberPoint, SimplexPoint};
use crate::linalg::{hermitian_eigen, iwasawa, jacobi_eigh, singular_values, ComplexMatrix};
use crate::linalg::{HermitianTraceless, SpecialLinear, SpecialUnitary};
use crate::Result;

/// Eigenvalues of a traceless Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &HermitianTraceless) -> Result<ChamberPoint> {
    ChamberPoint::centered(hermitian_eigen(m)?.values)
}

/// Logarithms of the diagonal of `A` in `g = N A K`.
pub fn iwasawa_log_a(g: &SpecialLinear) -> Vec<f64> {
    iwasawa(g).a.iter().map(|a| a.ln()).collect()
}

/// Descending logarithms of the singular values.
pub fn log_singular_values(g: &SpecialLinear) -> Result<ChamberPoint> {
    ChamberPoint::centered(singular_values(g)?.iter().map(|s| s.ln()).collect())
}

/// Eigenvalues of a unitary matrix. `U` is normal, so a generic real
/// combination of its Hermitian and skew parts has the same eigenvectors.
pub fn unitary_eigenvalues(u: &ComplexMatrix) -> Result<Vec<Complex64>> {
    const MIX: f64 = 0.754_877_666_246_692_7;
    let adj = u.adjoint();
    let re = (u + &adj).scale_re(0.5);
    let im = (u - &adj).scale(Complex64::new(0.0, -0.5));
    let mixed = &re + &im.scale_re(MIX);
    let vecs = jacobi_eigh(&mixed)?.vectors;
    let n = u.dim();
    Ok((0..n)
        .map(|k| {
            let mut num = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let ui: Complex64 = (0..n).map(|j| u[(i, j)] * vecs[(j, k)]).sum();
                num += vecs[(i, k)].conj() * ui;
            }
            num
        })
        .collect())
}

/// Eigenangles in the alcove: principal arguments sorted descending; when
/// their sum is `2πk`, the `k` largest are lowered by `2π` (or the `|k|`
/// smallest raised) and the result re-sorted.
pub fn eigenangles(u: &SpecialUnitary) -> Result<SimplexPoint> {
    let mut theta: Vec<f64> = unitary_eigenvalues(u.matrix())?.iter().map(|z| z.arg()).collect();
    theta.sort_by(|a, b| b.total_cmp(a));
    let k = (theta.iter().sum::<f64>() / (2.0 * PI)).round() as i64;
    let n = theta.len();
    if k > 0 {
        theta.iter_mut().take(k as usize).for_each(|t| *t -= 2.0 * PI);
    } else if k < 0 {
        theta.iter_mut().skip(n - (-k) as usize).for_each(|t| *t += 2.0 * PI);
    }
    theta.sort_by(|a, b| b.total_cmp(a));
    let mean = theta.iter().sum::<f64>() / n as f64;
    theta.iter_mut().for_each(|t| *t -= mean);
    SimplexPoint::new(theta)
}
