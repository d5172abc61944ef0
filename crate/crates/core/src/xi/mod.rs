//! Riemann's ξ in the normalization `ξ(s) = s(s−1)π^{−s/2}Γ(s/2)ζ(s)`,
//! Pólya's falsified ξ*, `ξ̃(z) = 𝔊(iz/2, π)`, and zero counting on the
//! critical line.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{ln_gamma_complex, macdonald_k_scaled, polya_g, theta_phi, zeta_complex, ScaledK};
use crate::{Error, Result};

/// Largest `|z|` accepted on the critical line.
pub const XI_MAX_Z: f64 = 120.0;
/// Below this `|z|` the cosine transform of Φ is used on the critical line.
pub const PHI_ROUTE_MAX_Z: f64 = 30.0;
/// Largest `r` accepted by [`count_zeros`].
pub const COUNT_MAX_R: f64 = 100.0;

const PHI_STEP: f64 = 0.005;
const PHI_UPPER: f64 = 4.0;

/// How a ξ value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiRoute {
    PhiIntegral,
    ZetaProduct,
    ScaledK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiArgument {
    CriticalLine,
    RealAxis,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiEval {
    pub argument: XiArgument,
    pub at: f64,
    pub value: f64,
    pub route: XiRoute,
}

fn check_z(z: f64) -> Result<()> {
    if !(z.abs() <= XI_MAX_Z) {
        return Err(Error::OutOfRange {
            what: "z",
            value: z,
            range: "[-120, 120]",
        });
    }
    Ok(())
}

/// Φ sampled on `u = k·h`, `k ≥ 0`; Φ is negligible beyond `u = 4`.
fn phi_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = (PHI_UPPER / PHI_STEP).round() as usize;
        (0..=n).map(|k| theta_phi(k as f64 * PHI_STEP).expect("within range")).collect()
    })
}

/// `4∫_0^∞ Φ(u) w(u) du` for even `w`, by the trapezoid rule on the whole
/// line, which converges geometrically for this analytic integrand.
///
/// With Φ as defined in `specfun`, `2∫_0^∞ Φ(u) cos(zu) du` is half of
/// `s(s−1)π^{−s/2}Γ(s/2)ζ(s)`; the product normalization is the one used
/// here, so the transform carries a factor 4.
fn phi_transform(w: impl Fn(f64) -> f64) -> f64 {
    let table = phi_table();
    let mut sum = 0.5 * table[0] * w(0.0);
    for (k, phi) in table.iter().enumerate().skip(1) {
        if *phi == 0.0 {
            break;
        }
        sum += phi * w(k as f64 * PHI_STEP);
    }
    4.0 * PHI_STEP * sum
}

/// `ξ(1/2 + iz) = 4∫_0^∞ Φ(u) cos(zu) du`.
pub fn xi_phi_integral(z: f64) -> f64 {
    let z = z.abs();
    phi_transform(|u| (z * u).cos())
}

/// `(e^{π|z|/4} ξ(1/2 + iz), π|z|/4)` from `−(z² + ¼)|π^{−s/2}Γ(s/2)| Z(z)`
/// with `Z = Re(e^{iθ}ζ)` and `θ = arg(π^{−s/2}Γ(s/2))`; the modulus is kept
/// in logarithmic form.
pub fn xi_product_scaled(z: f64) -> Result<(f64, f64)> {
    check_z(z)?;
    let z = z.abs();
    let s = Complex64::new(0.5, z);
    let lg = ln_gamma_complex(s * 0.5)?;
    let ln_pi = PI.ln();
    let log_mod = lg.re - 0.25 * ln_pi;
    let theta = lg.im - 0.5 * z * ln_pi;
    let zeta = zeta_complex(s)?;
    let hardy = (Complex64::from_polar(1.0, theta) * zeta).re;
    let log_scale = FRAC_PI_4 * z;
    Ok((-(z * z + 0.25) * (log_mod + log_scale).exp() * hardy, log_scale))
}

/// `ξ(1/2 + iz)`: the Φ cosine transform for `|z| ≤ 30`, the modulus–phase
/// product beyond.
pub fn xi_critical(z: f64) -> Result<f64> {
    Ok(xi_critical_eval(z)?.value)
}

pub fn xi_critical_eval(z: f64) -> Result<XiEval> {
    check_z(z)?;
    let (value, route) = if z.abs() <= PHI_ROUTE_MAX_Z {
        (xi_phi_integral(z), XiRoute::PhiIntegral)
    } else {
        let (v, scale) = xi_product_scaled(z)?;
        (v * (-scale).exp(), XiRoute::ZetaProduct)
    };
    Ok(XiEval {
        argument: XiArgument::CriticalLine,
        at: z,
        value,
        route,
    })
}

/// `ξ(s)` for real `s ∈ [0, 12]` as `4∫_0^∞ Φ(u) cosh((s − ½)u) du`.
pub fn xi_real_axis(s: f64) -> Result<f64> {
    if !(0.0..=12.0).contains(&s) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            range: "[0, 12]",
        });
    }
    Ok(phi_transform(|u| ((s - 0.5) * u).cosh()))
}

/// `s(s−1)π^{−s/2}Γ(s/2)ζ(s)` for real `s ≠ 0, 1`.
pub fn xi_product_real(s: f64) -> Result<f64> {
    let sc = Complex64::new(s, 0.0);
    let g = ln_gamma_complex(sc * 0.5)?;
    // Γ(s/2) can be negative for s < 0; the log carries the sign in its
    // imaginary part.
    let gamma = g.exp().re;
    let zeta = zeta_complex(sc)?.re;
    Ok(s * (s - 1.0) * PI.powf(-s / 2.0) * gamma * zeta)
}

/// `ξ*(z) = 4π² Re 𝔊(9/4 + iz/2, π)`, scaled by `e^{π|z|/4}`.
pub fn xi_star_scaled(z: f64) -> Result<ScaledK> {
    check_z(z)?;
    polya_g(Complex64::new(2.25, 0.5 * z), PI)
}

/// Falsified ξ*.
pub fn xi_star(z: f64) -> Result<f64> {
    let k = xi_star_scaled(z)?;
    Ok(4.0 * PI * PI * k.value().re)
}

/// The defining integral `8π²∫_0^∞ (e^{9u/2} + e^{−9u/2}) e^{−2π cosh 2u} cos(zu) du`
/// by the trapezoid rule; a validation oracle for moderate `|z|`.
pub fn xi_star_direct(z: f64) -> f64 {
    let h = 0.004;
    let f = |u: f64| 2.0 * (4.5 * u).cosh() * (-2.0 * PI * (2.0 * u).cosh()).exp() * (z * u).cos();
    let mut sum = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let u = k as f64 * h;
        let v = f(u);
        sum += v;
        if u > 1.0 && (-2.0 * PI * (2.0 * u).cosh() + 4.5 * u) < -745.0 {
            break;
        }
        k += 1;
    }
    8.0 * PI * PI * h * sum
}

/// `ξ̃(z) = 𝔊(iz/2, π) = 2K_{iz/2}(2π)`, scaled.
pub fn tilde_xi(z: f64) -> Result<ScaledK> {
    check_z(z)?;
    polya_g(Complex64::new(0.0, 0.5 * z), PI)
}

/// Which functions to count zeros of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroTarget {
    Xi,
    XiStar,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCountReport {
    pub r: f64,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "N_star")]
    pub n_star: Option<usize>,
    #[serde(rename = "asym_N")]
    pub asym_n: f64,
    pub diff: Option<i64>,
    pub xi_zeros: Vec<f64>,
    pub xi_star_zeros: Vec<f64>,
    /// Derivatives of the scaled functions at the ξ* zeros.
    pub xi_star_slopes: Vec<f64>,
}

/// `(r/2π) log(r/2π) − r/2π`.
pub fn xi_count_asymptotic(r: f64) -> f64 {
    let q = r / (2.0 * PI);
    q * q.ln() - q
}

/// Real function with the sign of ξ on the critical line, scaled to O(1).
pub fn xi_sign_function(z: f64) -> Result<f64> {
    Ok(xi_product_scaled(z)?.0)
}

/// Real function with the sign of ξ*, scaled to O(1).
pub fn xi_star_sign_function(z: f64) -> Result<f64> {
    Ok(4.0 * PI * PI * xi_star_scaled(z)?.scaled_value.re)
}

/// Scan options for [`count_zeros_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountScan {
    pub points_per_zero: f64,
    pub max_step: f64,
    pub tolerance: f64,
}

impl Default for CountScan {
    fn default() -> Self {
        Self {
            points_per_zero: 8.0,
            max_step: 0.5,
            tolerance: 1e-9,
        }
    }
}

/// Sign changes of `f` on `(0, r]`, refined by bisection.
pub fn scan_zeros(f: &dyn Fn(f64) -> Result<f64>, r: f64, scan: &CountScan) -> Result<Vec<f64>> {
    let step_at = |z: f64| {
        let rate = (z / (2.0 * PI)).ln();
        if rate > 0.0 {
            (2.0 * PI / (scan.points_per_zero * rate)).min(scan.max_step)
        } else {
            scan.max_step
        }
    };
    let mut out = Vec::new();
    let mut z0 = 0.0;
    let mut f0 = f(z0)?;
    while z0 < r {
        let step = step_at(z0);
        if step < 1e-12 {
            return Err(Error::Resolution {
                lo: z0,
                hi: z0 + step,
                reason: "scan step underflow".into(),
            });
        }
        let z1 = (z0 + step).min(r);
        let f1 = f(z1)?;
        if f1 == 0.0 {
            out.push(z1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            let (mut lo, mut hi, mut flo) = (z0, z1, f0);
            while hi - lo > scan.tolerance {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        z0 = z1;
        f0 = f1;
    }
    Ok(out)
}

pub fn count_zeros(which: ZeroTarget, r: f64) -> Result<ZeroCountReport> {
    count_zeros_with(which, r, &CountScan::default())
}

pub fn count_zeros_with(which: ZeroTarget, r: f64, scan: &CountScan) -> Result<ZeroCountReport> {
    if !(r > 0.0 && r <= COUNT_MAX_R) {
        return Err(Error::OutOfRange {
            what: "r",
            value: r,
            range: "(0, 100]",
        });
    }
    let want_xi = which != ZeroTarget::XiStar;
    let want_star = which != ZeroTarget::Xi;
    let xi_zeros = if want_xi { scan_zeros(&xi_sign_function, r, scan)? } else { Vec::new() };
    let (xi_star_zeros, xi_star_slopes) = if want_star {
        let zs = scan_zeros(&xi_star_sign_function, r, scan)?;
        let h = 1e-5;
        let slopes = zs
            .iter()
            .map(|&z| Ok((xi_star_sign_function(z + h)? - xi_star_sign_function(z - h)?) / (2.0 * h)))
            .collect::<Result<Vec<f64>>>()?;
        (zs, slopes)
    } else {
        (Vec::new(), Vec::new())
    };
    let n = want_xi.then_some(xi_zeros.len());
    let n_star = want_star.then_some(xi_star_zeros.len());
    Ok(ZeroCountReport {
        r,
        n,
        n_star,
        asym_n: xi_count_asymptotic(r),
        diff: n.zip(n_star).map(|(a, b)| a as i64 - b as i64),
        xi_zeros,
        xi_star_zeros,
        xi_star_slopes,
    })
}

/// Direct access to `K_{9/4+iz/2}(2π)` for the delegation identity.
pub fn xi_star_kernel(z: f64) -> Result<ScaledK> {
    macdonald_k_scaled(Complex64::new(2.25, 0.5 * z), PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_axis_values() {
        assert!((xi_real_axis(2.0).unwrap() - PI / 3.0).abs() < 1e-12);
        assert!((xi_real_axis(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((xi_real_axis(1.0).unwrap() - 1.0).abs() < 1e-12);
        for s in [0.2, 0.4] {
            assert!((xi_real_axis(s).unwrap() - xi_real_axis(1.0 - s).unwrap()).abs() < 1e-10);
        }
        assert!(xi_real_axis(12.5).is_err());
    }

    #[test]
    fn routes_agree_on_the_line() {
        for z in [0.0, 5.0, 14.0, 25.0, 30.0] {
            let a = xi_phi_integral(z);
            let (v, scale) = xi_product_scaled(z).unwrap();
            let b = v * (-scale).exp();
            assert!((a - b).abs() < 1e-8 * a.abs().max(1e-12), "z={z}: {a} {b}");
        }
    }

    #[test]
    fn star_routes_agree() {
        for z in [0.0, 10.0, 20.0] {
            let a = xi_star(z).unwrap();
            let b = xi_star_direct(z);
            assert!((a - b).abs() < 1e-8 * a.abs(), "z={z}: {a} {b}");
        }
        assert_eq!(xi_star(7.0).unwrap(), xi_star(-7.0).unwrap());
    }

    #[test]
    fn real_axis_matches_product() {
        for s in [1.5, 2.0, 3.7, 6.0] {
            let a = xi_real_axis(s).unwrap();
            let b = xi_product_real(s).unwrap();
            assert!((a - b).abs() < 1e-10 * a, "s={s}: {a} {b}");
        }
    }

    #[test]
    fn evenness() {
        for z in [3.0, 40.0] {
            assert_eq!(xi_critical(z).unwrap(), xi_critical(-z).unwrap());
        }
    }
}
