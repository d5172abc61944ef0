use num_complex::Complex64;

use crate::{Error, Result};

/// `B_{2k}/(2k)!` for `k = 1..=8`.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
];

/// Largest `|t|` accepted on the critical line.
pub const ZETA_LINE_MAX: f64 = 120.0;

/// Riemann zeta by Euler–Maclaurin with `N = ⌈|Im s|⌉ + 10` terms and eight
/// correction terms.
pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite argument {s}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ζ at s = 1"));
    }
    if s.re < -10.0 {
        return Err(Error::OutOfRange {
            what: "Re s",
            value: s.re,
            range: "[-10, ∞)",
        });
    }
    let n = s.im.abs().ceil() as usize + 10;
    let nf = n as f64;
    let ln_n = nf.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    // Rising factorial s(s+1)…(s+2k−2) times N^{−s−2k+1}.
    let mut rising = s;
    let mut power = n_pow / nf;
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += *c * rising * power;
        let j = 2 * k as u32 + 1;
        rising *= (s + j as f64) * (s + (j + 1) as f64);
        power /= nf * nf;
    }
    Ok(sum)
}

/// `ζ(s)` for real `s > 1`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            range: "(1, ∞)",
        });
    }
    Ok(zeta_complex(Complex64::new(s, 0.0))?.re)
}

/// `ζ(1/2 + it)` for `|t| ≤ 120`.
pub fn zeta_line(t: f64) -> Result<Complex64> {
    if !(t.abs() <= ZETA_LINE_MAX) {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: "[-120, 120]",
        });
    }
    zeta_complex(Complex64::new(0.5, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        assert!((zeta_real(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_real(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!(zeta_real(1.0).is_err());
    }

    #[test]
    fn values_left_of_one() {
        assert!((zeta_complex(Complex64::new(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-13);
        assert!((zeta_complex(Complex64::new(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
        assert!((zeta_complex(Complex64::new(0.5, 0.0)).unwrap().re + 1.460_354_508_809_586_8).abs() < 1e-13);
    }

    #[test]
    fn first_zero_on_the_line() {
        assert!(zeta_line(14.134_725_141_734_693).unwrap().norm() < 1e-10);
        assert!(zeta_line(121.0).is_err());
    }
}
