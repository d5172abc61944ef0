use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quad::{exp_sinh, gl_panels};
use crate::specfun::{gamma_complex, macdonald_k};
use crate::xi::xi_real_axis;
use crate::{Error, Result};

/// Hitting time `T_x` of level `x` by Brownian motion with drift `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftedPassageLaw {
    pub x: f64,
    pub a: f64,
}

impl DriftedPassageLaw {
    pub fn new(x: f64, a: f64) -> Result<Self> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::InvalidArgument(format!("level x must be positive, got {x}")));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!("drift a must be non-negative, got {a}")));
        }
        Ok(Self { x, a })
    }
}

/// Hitting time `S_a` of level `a` by a three-dimensional Bessel process
/// started at 0, or `W_a = S_a + S′_a` when `doubled`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselPassageLaw {
    pub a: f64,
    pub doubled: bool,
}

impl BesselPassageLaw {
    pub fn new(a: f64, doubled: bool) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidArgument(format!("level a must be positive, got {a}")));
        }
        Ok(Self { a, doubled })
    }

    /// `E[e^{−λ²/2 ·}]`.
    pub fn laplace(&self, lambda: f64) -> f64 {
        let s = s_a_laplace(lambda, self.a);
        if self.doubled {
            s * s
        } else {
            s
        }
    }

    pub fn mean(&self) -> f64 {
        let m = self.a * self.a / 3.0;
        if self.doubled {
            2.0 * m
        } else {
            m
        }
    }
}

/// Gamma law with shape `ω` and rate `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaLaw {
    pub omega: f64,
    pub c: f64,
}

impl GammaLaw {
    pub fn new(omega: f64, c: f64) -> Result<Self> {
        if !(omega > 0.0) || !(c > 0.0) {
            return Err(Error::InvalidArgument(format!("gamma law needs ω, c > 0, got ({omega}, {c})")));
        }
        Ok(Self { omega, c })
    }

    pub fn density(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let ln_norm = crate::specfun::ln_gamma_complex(Complex64::new(self.omega, 0.0))
            .map(|g| g.re)
            .unwrap_or(f64::INFINITY);
        ((self.omega - 1.0) * t.ln() + self.omega * self.c.ln() - self.c * t - ln_norm).exp()
    }

    /// `E[e^{−λγ}] = (1 + λ/c)^{−ω}`.
    pub fn laplace(&self, lambda: f64) -> f64 {
        (-self.omega * gamma_psi(lambda, self.c)).exp()
    }

    /// `Γ_{ω₁,c} * Γ_{ω₂,c} = Γ_{ω₁+ω₂,c}`.
    pub fn convolve(&self, other: &GammaLaw) -> Result<GammaLaw> {
        if self.c != other.c {
            return Err(Error::InvalidArgument("gamma laws with different rates do not convolve in the family".into()));
        }
        GammaLaw::new(self.omega + other.omega, self.c)
    }
}

/// Lévy exponent of the gamma subordinator, `log(1 + λ/c)`.
pub fn gamma_psi(lambda: f64, c: f64) -> f64 {
    (lambda / c).ln_1p()
}

fn check_positive_time(t: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("time must be positive, got {t}")));
    }
    Ok(())
}

/// `x e^{−x²/2t} / √(2πt³) · e^{ax − a²t/2}`.
pub fn t_x_density(t: f64, law: &DriftedPassageLaw) -> Result<f64> {
    check_positive_time(t)?;
    let DriftedPassageLaw { x, a } = *law;
    let d = x - a * t;
    Ok(x / (2.0 * PI * t * t * t).sqrt() * (-d * d / (2.0 * t)).exp())
}

/// Critical point of the log-density: the positive root of
/// `a²t² + 3t − x² = 0`.
pub fn t_x_mode(law: &DriftedPassageLaw) -> f64 {
    let DriftedPassageLaw { x, a } = *law;
    if a == 0.0 {
        return x * x / 3.0;
    }
    let a2 = a * a;
    // Stable form of (−3 + √(9 + 4a²x²)) / 2a².
    2.0 * x * x / (3.0 + (9.0 + 4.0 * a2 * x * x).sqrt())
}

/// `E[e^{−λ²T_x/2}] = e^{−x√(λ²+a²) + ax}`.
pub fn t_x_laplace(lambda: f64, law: &DriftedPassageLaw) -> f64 {
    let DriftedPassageLaw { x, a } = *law;
    (-x * (lambda.hypot(a) - a)).exp()
}

pub const MELLIN_MAX_ORDER: f64 = 10.0;

/// `E[T_x^s] = (x/a)^s K_{s−1/2}(ax) / K_{−1/2}(ax)`. At `a = 0` the law is
/// ½-stable and only `s < 1/2` moments exist, given by
/// `x^{2s} 2^{−s} Γ(1/2 − s)/√π`.
pub fn t_x_mellin(s: f64, law: &DriftedPassageLaw) -> Result<f64> {
    if !(s.abs() <= MELLIN_MAX_ORDER) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            range: "[-10, 10]",
        });
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let DriftedPassageLaw { x, a } = *law;
    if a == 0.0 {
        if s >= 0.5 {
            return Err(Error::Divergent(s));
        }
        let g = gamma_complex(Complex64::new(0.5 - s, 0.0))?.re;
        return Ok(x.powf(2.0 * s) * 2f64.powf(-s) * g / PI.sqrt());
    }
    let z = a * x;
    let num = macdonald_k(Complex64::new(s - 0.5, 0.0), z)?.re;
    let den = macdonald_k(Complex64::new(-0.5, 0.0), z)?.re;
    Ok((x / a).powf(s) * num / den)
}

/// `E[e^{−λ²S_a/2}] = λa / sinh(λa)`.
pub fn s_a_laplace(lambda: f64, a: f64) -> f64 {
    let z = (lambda * a).abs();
    if z < 1e-4 {
        let z2 = z * z;
        return 1.0 - z2 / 6.0 + 7.0 * z2 * z2 / 360.0;
    }
    if z > 700.0 {
        return 2.0 * z * (-z).exp();
    }
    z / z.sinh()
}

/// Decay rates `c_n = π²n²/(2a²)` of the `W_a` series.
pub(crate) fn w_rate(n: usize, a: f64) -> f64 {
    let r = PI / a;
    let n = n as f64;
    0.5 * r * r * n * n
}

/// Below this point the `W_a` density is returned as 0.
pub fn w_a_cutoff(a: f64) -> f64 {
    0.05 * a * a
}

/// Sums `term(c_n)` until the terms are negligible and decreasing.
fn w_series(x: f64, a: f64, term: impl Fn(f64) -> f64) -> f64 {
    let mut sum = 0.0;
    for n in 1.. {
        let c = w_rate(n, a);
        let t = term(c);
        sum += t;
        // Terms decrease once c x > 2; beyond that e^{−c x} kills them.
        if c * x > 2.0 && t.abs() <= 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        if c * x > 745.0 {
            break;
        }
    }
    sum
}

/// `Σ (π⁴n⁴x/a⁴ − 3π²n²/a²) e^{−π²n²x/2a²}` for `x ≥ 0.05a²`, else 0; the
/// neglected mass is bounded by [`w_a_small_mass_bound`]. Values are clamped
/// at 0 against rounding in the alternating head of the series.
pub fn w_a_density(x: f64, a: f64) -> f64 {
    if !(x >= w_a_cutoff(a)) {
        return 0.0;
    }
    w_series(x, a, |c| (4.0 * c * c * x - 6.0 * c) * (-c * x).exp()).max(0.0)
}

/// `P(W_a > x) = Σ (4c_n x − 2) e^{−c_n x}`.
pub fn w_a_survival(x: f64, a: f64) -> f64 {
    if !(x >= w_a_cutoff(a)) {
        return 1.0;
    }
    w_series(x, a, |c| (4.0 * c * x - 2.0) * (-c * x).exp()).clamp(0.0, 1.0)
}

pub fn w_a_cdf(x: f64, a: f64) -> f64 {
    1.0 - w_a_survival(x, a)
}

/// Chernoff bound `inf_σ e^{σx₀} E[e^{−σW_a}]` on `P(W_a ≤ x₀)` at the
/// density cutoff `x₀ = 0.05a²`, minimized over a grid in `z = a√(2σ)`.
pub fn w_a_small_mass_bound(a: f64) -> f64 {
    let x0 = w_a_cutoff(a);
    (1..=2000)
        .map(|k| {
            let z = 0.05 * k as f64;
            let sigma = z * z / (2.0 * a * a);
            let l = s_a_laplace(z / a, a);
            sigma * x0 + 2.0 * l.ln()
        })
        .fold(f64::INFINITY, f64::min)
        .exp()
}

/// Upper end of the numerically relevant range: `P(W_a > x) < 1e−17`.
pub fn w_a_upper(a: f64) -> f64 {
    let c1 = w_rate(1, a);
    let mut x = 40.0 / c1;
    while w_a_survival(x, a) > 1e-17 {
        x *= 1.25;
    }
    x
}

/// `∫ x^s P(W_a ∈ dx)` by Gauss–Legendre panels over `[x₀, x_max]`.
pub fn w_a_moment_quadrature(s: f64, a: f64) -> f64 {
    let lo = w_a_cutoff(a);
    let hi = w_a_upper(a);
    gl_panels(|x| x.powf(s) * w_a_density(x, a), lo, hi, 400)
}

/// `E[W_a^s] = (2a²/π)^s ξ(2s)` for `−1/2 < s ≤ 5`, with `ξ(2s) = ξ(1−2s)`
/// for negative `s`.
pub fn w_a_mellin(s: f64, a: f64) -> Result<f64> {
    if !(s > -0.5 && s <= 5.0) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            range: "(-1/2, 5]",
        });
    }
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("level a must be positive, got {a}")));
    }
    let arg = if s < 0.0 { 1.0 - 2.0 * s } else { 2.0 * s };
    Ok((2.0 * a * a / PI).powf(s) * xi_real_axis(arg)?)
}

/// `∫_0^∞ e^{−λ²t/2} P(T_x ∈ dt)` by exp–sinh quadrature.
pub fn t_x_laplace_quadrature(lambda: f64, law: &DriftedPassageLaw) -> Result<f64> {
    exp_sinh(
        |t| (-0.5 * lambda * lambda * t).exp() * t_x_density(t, law).unwrap_or(0.0),
        0.0,
        1e-13,
    )
}
