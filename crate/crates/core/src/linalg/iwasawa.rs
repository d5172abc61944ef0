use num_complex::Complex64;

use super::{ComplexMatrix, SpecialLinear};

/// `g = N · A · K` with `N` upper unitriangular, `A` positive diagonal and
/// `K` unitary.
#[derive(Clone, Debug)]
pub struct Iwasawa {
    pub n: ComplexMatrix,
    pub a: Vec<f64>,
    pub k: ComplexMatrix,
}

impl Iwasawa {
    pub fn reassemble(&self) -> ComplexMatrix {
        let a = ComplexMatrix::from_real_diag(&self.a);
        &(&self.n * &a) * &self.k
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Gram–Schmidt on the rows of `g`, from the last row upwards: row `i` of
/// `g` lies in the span of rows `i..n` of `K`, which is exactly the upper
/// triangular structure of `N·A`. Each row is reorthogonalized once.
pub fn iwasawa(g: &SpecialLinear) -> Iwasawa {
    let m = g.matrix();
    let n = m.dim();
    let mut k_rows: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    let mut b = ComplexMatrix::zeros(n);
    for i in (0..n).rev() {
        let mut v: Vec<Complex64> = (0..n).map(|j| m[(i, j)]).collect();
        for _pass in 0..2 {
            for j in i + 1..n {
                let c = inner(&v, &k_rows[j]);
                b[(i, j)] += c;
                for (x, kx) in v.iter_mut().zip(&k_rows[j]) {
                    *x -= c * kx;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        b[(i, i)] = Complex64::new(norm, 0.0);
        k_rows[i] = v.into_iter().map(|z| z / norm).collect();
    }
    let a: Vec<f64> = (0..n).map(|i| b[(i, i)].re).collect();
    let nmat = ComplexMatrix::from_fn(n, |i, j| b[(i, j)] / a[j]);
    let k = ComplexMatrix::from_fn(n, |i, j| k_rows[i][j]);
    Iwasawa { n: nmat, a, k }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_example() {
        let g = SpecialLinear::new(ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 0.5]])).unwrap();
        let f = iwasawa(&g);
        assert!((f.a[0] - 2.0).abs() < 1e-15 && (f.a[1] - 0.5).abs() < 1e-15);
        let n = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(f.n.max_abs_diff(&n) < 1e-15);
        assert!(f.k.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn identity() {
        let f = iwasawa(&SpecialLinear::new(ComplexMatrix::identity(3)).unwrap());
        assert_eq!(f.a, vec![1.0; 3]);
        assert!(f.n.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert!(f.k.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }
}
