use std::f64::consts::PI;

use crate::{Error, Result};

/// Largest `|u|` accepted by [`theta_phi`].
pub const THETA_MAX_U: f64 = 6.0;

/// `Φ(u) = 2π e^{5u/2} Σ_{n≥1} (2π e^{2u} n² − 3) n² e^{−π n² e^{2u}}`,
/// summed until the terms are past their peak and below `1e−18` of the
/// accumulated magnitude.
pub fn theta_phi(u: f64) -> Result<f64> {
    if !(u.abs() <= THETA_MAX_U) {
        return Err(Error::OutOfRange {
            what: "u",
            value: u,
            range: "[-6, 6]",
        });
    }
    let q = PI * (2.0 * u).exp();
    let mut sum = 0.0;
    let mut scale: f64 = 0.0;
    let mut n = 1.0f64;
    loop {
        let n2 = n * n;
        let term = (2.0 * q * n2 - 3.0) * n2 * (-q * n2).exp();
        sum += term;
        scale = scale.max(sum.abs()).max(term.abs());
        if q * n2 > 3.0 && term.abs() <= 1e-18 * scale {
            break;
        }
        n += 1.0;
    }
    Ok(2.0 * PI * (2.5 * u).exp() * sum)
}

/// `ln Φ(u)`, evaluated at `|u|` (Φ is even) in the factored form
/// `ln(2π e^{5u/2}(2πe^{2u} − 3)) − πe^{2u} + ln(1 + …)`, which stays finite
/// where `Φ` itself underflows.
pub fn theta_phi_ln(u: f64) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::InvalidArgument("u must be finite".into()));
    }
    let u = u.abs();
    let q = PI * (2.0 * u).exp();
    let lead = 2.0 * q - 3.0;
    let mut rest = 0.0;
    let mut n = 2.0f64;
    loop {
        let n2 = n * n;
        let term = (2.0 * q * n2 - 3.0) * n2 / lead * (-q * (n2 - 1.0)).exp();
        rest += term;
        if term <= 1e-18 * (1.0 + rest) {
            break;
        }
        n += 1.0;
    }
    Ok((2.0 * PI).ln() + 2.5 * u + lead.ln() - q + rest.ln_1p())
}

/// `ln(4π² e^{9u/2 − πe^{2u}})`, the leading behaviour as `u → +∞`.
pub fn theta_phi_asymptotic_ln(u: f64) -> f64 {
    (4.0 * PI * PI).ln() + 4.5 * u - PI * (2.0 * u).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even() {
        for u in [0.1, 0.5, 1.0, 2.0, 3.0] {
            assert!((theta_phi(u).unwrap() - theta_phi(-u).unwrap()).abs() < 1e-10);
        }
        assert!(theta_phi(6.5).is_err());
    }

    #[test]
    fn log_form_matches_direct_sum() {
        for u in [0.0, 0.3, 1.0, 2.0] {
            let direct = theta_phi(u).unwrap();
            assert!((theta_phi_ln(u).unwrap() - direct.ln()).abs() < 1e-12, "u={u}");
        }
    }

    #[test]
    fn brute_force_at_zero() {
        let brute: f64 = (1..=50)
            .map(|n| {
                let n2 = (n * n) as f64;
                (2.0 * PI * n2 - 3.0) * n2 * (-PI * n2).exp()
            })
            .sum::<f64>()
            * 2.0
            * PI;
        let v = theta_phi(0.0).unwrap();
        assert!((v - brute).abs() < 1e-15);
        assert!((v - 0.89).abs() < 0.01, "{v}");
    }
}
