
use super::ComplexMatrix;

// Padé degrees and 1-norm thresholds.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn axpy_sum(n: usize, terms: &[(f64, &ComplexMatrix)], with_identity: f64) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(n).scale_re(with_identity);
    for (c, m) in terms {
        out = &out + &m.scale_re(*c);
    }
    out
}

/// Padé numerator/denominator pieces `(U, V)` of degree `m ≤ 9`.
fn pade_low(a: &ComplexMatrix, b: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let a2 = a * a;
    let mut powers = vec![ComplexMatrix::identity(n), a2.clone()];
    while powers.len() < b.len() / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u = ComplexMatrix::zeros(n);
    let mut v = ComplexMatrix::zeros(n);
    for (k, p) in powers.iter().enumerate() {
        u = &u + &p.scale_re(b[2 * k + 1]);
        v = &v + &p.scale_re(b[2 * k]);
    }
    (a * &u, v)
}

fn pade13(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = axpy_sum(n, &[(b[13], &a6), (b[11], &a4), (b[9], &a2)], 0.0);
    let u = axpy_sum(n, &[(b[7], &a6), (b[5], &a4), (b[3], &a2)], b[1]);
    let u = &(&a6 * &inner_u) + &u;
    let u = a * &u;
    let inner_v = axpy_sum(n, &[(b[12], &a6), (b[10], &a4), (b[8], &a2)], 0.0);
    let v = axpy_sum(n, &[(b[6], &a6), (b[4], &a4), (b[2], &a2)], b[0]);
    let v = &(&a6 * &inner_v) + &v;
    (u, v)
}

/// Matrix exponential by scaling and squaring with a diagonal Padé kernel
/// (degree chosen from the 1-norm, up to 13).
pub fn matrix_exp(x: &ComplexMatrix) -> ComplexMatrix {
    let n = x.dim();
    let norm = x.norm1();
    if norm == 0.0 {
        return ComplexMatrix::identity(n);
    }
    let (u, v, squarings) = match THETA.iter().find(|(_, th)| norm <= *th) {
        Some(&(m, _)) => {
            let b: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let (u, v) = pade_low(x, b);
            (u, v, 0)
        }
        None => {
            let s = ((norm / THETA_13).log2().ceil()).max(0.0) as i32;
            let scaled = x.scale_re(2f64.powi(-s));
            let (u, v) = pade13(&scaled);
            (u, v, s)
        }
    };
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.solve(&p).expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}
