use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use super::domain::{doob_kernel, killed_kernel, DomainFamily, KernelSpec};
use crate::quad::gl_panels;
use crate::Result;

/// Residuals of the semigroup identities for one family at `n = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelIdentities {
    pub family: DomainFamily,
    /// `|∫ q_t(x, y) dy − 1|`.
    pub mass: f64,
    /// `|∫ p⁰_t(x, y) h(y) dy − e^{λt} h(x)|`, relative to `max(1, e^{λt}h(x))`.
    pub harmonic: f64,
    /// `|∫ p⁰_s(x, z) p⁰_t(z, y) dz − p⁰_{s+t}(x, y)|`.
    pub chapman_kolmogorov: f64,
}

impl KernelIdentities {
    pub fn max(&self) -> f64 {
        self.mass.max(self.harmonic).max(self.chapman_kolmogorov)
    }
}

/// `(u/√2, −u/√2)`: unit-speed coordinate on `H_2`.
fn h2(u: f64) -> Vec<f64> {
    vec![u / SQRT_2, -u / SQRT_2]
}

fn integrate(family: DomainFamily, t: f64, f: impl Fn(&[f64]) -> f64) -> f64 {
    let hi = match family {
        DomainFamily::Simplex => 2.0 * PI,
        _ => 5.0 + 6.0 * t + 14.0 * t.sqrt(),
    } / SQRT_2;
    gl_panels(|u| if u > 0.0 { f(&h2(u)) } else { 0.0 }, 0.0, hi, 60)
}

/// Mass, harmonicity and Chapman–Kolmogorov residuals at `n = 2` by
/// Gauss–Legendre quadrature along the unit coordinate of `H_2`.
pub fn kernel_identities_n2(family: DomainFamily, t: f64) -> Result<KernelIdentities> {
    let spec = KernelSpec::new(family, 2);
    let domain = spec.domain()?;
    let x = h2(1.3);
    let mass = integrate(family, t, |y| doob_kernel(&spec, t, &x, y).unwrap_or(0.0));
    let lhs = integrate(family, t, |y| killed_kernel(&spec, t, &x, y).map_or(0.0, |p| p * domain.harmonic(y)));
    let rhs = (domain.eigenvalue() * t).exp() * domain.harmonic(&x);
    let (s, y) = (0.4 * t, h2(2.0));
    let ck = integrate(family, t, |z| {
        killed_kernel(&spec, s, &x, z).unwrap_or(0.0) * killed_kernel(&spec, t - s, z, &y).unwrap_or(0.0)
    });
    Ok(KernelIdentities {
        family,
        mass: (mass - 1.0).abs(),
        harmonic: (lhs - rhs).abs() / rhs.max(1.0),
        chapman_kolmogorov: (ck - killed_kernel(&spec, t, &x, &y)?).abs(),
    })
}
