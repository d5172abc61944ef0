use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::laws::{gamma_psi, s_a_laplace, t_x_laplace, w_rate, DriftedPassageLaw};
use crate::chamber::{stated_nu, Density, DensityFn, SpectralIndex, SpectralMeasure};
use crate::quad::{exp_sinh, tanh_sinh};
use crate::{Error, Result};

/// Mixing measure of a generalized gamma convolution,
/// `ψ(σ) = multiplier · ∫ log(1 + σ/c) ν(dc)`, in the variable `σ = λ²/2`.
#[derive(Clone)]
pub struct ThorinMeasure {
    pub measure: SpectralMeasure,
    pub multiplier: f64,
    pub variable: &'static str,
    /// When the density is `g(c)/√(c − lo)`, the factor `g`; lets the
    /// quadrature integrate `2g(lo + u²)` without forming `c − lo`.
    pub edge: Option<DensityFn>,
}

pub const SIGMA_VARIABLE: &str = "sigma = lambda^2/2";

impl fmt::Debug for ThorinMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThorinMeasure")
            .field("measure", &self.measure)
            .field("multiplier", &self.multiplier)
            .field("variable", &self.variable)
            .field("edge", &self.edge.is_some())
            .finish()
    }
}

impl ThorinMeasure {
    pub fn new(measure: SpectralMeasure, multiplier: f64) -> Result<Self> {
        if !(multiplier > 0.0) || !multiplier.is_finite() {
            return Err(Error::InvalidArgument(format!("multiplier must be positive, got {multiplier}")));
        }
        check_integrability(&measure)?;
        Ok(Self {
            measure,
            multiplier,
            variable: SIGMA_VARIABLE,
            edge: None,
        })
    }

    pub fn with_edge(mut self, g: DensityFn) -> Self {
        self.edge = Some(g);
        self
    }

    /// Density of `multiplier · ν` at `c` (atoms excluded).
    pub fn density(&self, c: f64) -> f64 {
        self.measure.density.as_ref().map_or(0.0, |d| self.multiplier * d.eval(c))
    }
}

/// Numerical check of `∫_{c≥1} ν(dc)/c < ∞` for the density part: the local
/// decay exponent of `f(c)/c` far out must exceed 1.
fn check_integrability(measure: &SpectralMeasure) -> Result<()> {
    let Some(d) = &measure.density else {
        return Ok(());
    };
    if d.support.1.is_finite() {
        return Ok(());
    }
    let c = 1e8f64.max(d.support.0 * 1e4);
    let g = |c: f64| d.eval(c) / c;
    let (g1, g2) = (g(c), g(2.0 * c));
    if g1 == 0.0 {
        return Ok(());
    }
    let p = -(g2 / g1).log2();
    if !(p > 1.05) {
        return Err(Error::Divergent(p));
    }
    Ok(())
}

/// `ψ(σ) = Σ w ψ_c(σ) + ∫ ψ_c(σ) f(c) dc`, times the multiplier. Infinite
/// supports are integrated after `c = lo + u²`, which also removes an
/// inverse square-root singularity at `lo`.
pub fn ggc_exponent(sigma: f64, nu: &ThorinMeasure) -> Result<f64> {
    if !(sigma >= 0.0) {
        return Err(Error::InvalidArgument(format!("σ must be non-negative, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(0.0);
    }
    let atoms: f64 = nu.measure.atoms.iter().rev().map(|&(c, w)| w * gamma_psi(sigma, c)).sum();
    let continuous = match &nu.measure.density {
        None => 0.0,
        Some(d) => {
            let (lo, hi) = d.support;
            if hi.is_finite() {
                tanh_sinh(|c| (d.f)(c) * gamma_psi(sigma, c), lo, hi, 1e-12)?
            } else {
                exp_sinh(
                    |u| {
                        let c = lo + u * u;
                        let w = match &nu.edge {
                            Some(g) => 2.0 * g(c),
                            None => 2.0 * u * (d.f)(c),
                        };
                        w * gamma_psi(sigma, c)
                    },
                    0.0,
                    1e-12,
                )?
            }
        }
    };
    Ok(nu.multiplier * (atoms + continuous))
}

/// `−log E[e^{−σT_x}] = x(√(2σ + a²) − a)`.
pub fn t_x_exponent(sigma: f64, law: &DriftedPassageLaw) -> f64 {
    -t_x_laplace((2.0 * sigma).sqrt(), law).ln()
}

/// `−log E[e^{−σW_a}] = −2 log(λa/sinh λa)`, `λ = √(2σ)`.
pub fn w_a_exponent(sigma: f64, a: f64) -> f64 {
    -2.0 * s_a_laplace((2.0 * sigma).sqrt(), a).ln()
}

/// Default λ-grid for the fits: 41 points on `[0, 10]`.
pub fn lambda_grid() -> Vec<f64> {
    (0..=40).map(|k| 0.25 * k as f64).collect()
}

/// One-parameter least-squares fit `target ≈ m · base` over a λ-grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GgcFit {
    pub multiplier: f64,
    pub max_residual: f64,
    /// Spread of the pointwise ratios `target/base`, relative to the fit.
    pub ratio_variation: f64,
    pub lambdas: Vec<f64>,
}

pub fn fit_multiplier(
    base: &dyn Fn(f64) -> Result<f64>,
    target: &dyn Fn(f64) -> f64,
    lambdas: &[f64],
) -> Result<GgcFit> {
    let mut pairs = Vec::with_capacity(lambdas.len());
    for &l in lambdas {
        let sigma = 0.5 * l * l;
        pairs.push((base(sigma)?, target(sigma)));
    }
    let (num, den) = pairs.iter().fold((0.0, 0.0), |(n, d), (b, t)| (n + b * t, d + b * b));
    if !(den > 0.0) {
        return Err(Error::InvalidArgument("fit grid has no informative point".into()));
    }
    let multiplier = num / den;
    let max_residual = pairs.iter().map(|(b, t)| (multiplier * b - t).abs()).fold(0.0, f64::max);
    let ratios: Vec<f64> = pairs.iter().filter(|(b, _)| *b > 0.0).map(|(b, t)| t / b).collect();
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(GgcFit {
        multiplier,
        max_residual,
        ratio_variation: (hi - lo) / multiplier.abs(),
        lambdas: lambdas.to_vec(),
    })
}

/// `dc/(π√(c − a²/2))` on `c > a²/2`: the stated shape, before the fit.
pub fn thorin_t_x_shape(a: f64) -> Result<SpectralMeasure> {
    let b = 0.5 * a * a;
    SpectralMeasure::new(
        Vec::new(),
        Some(Density {
            support: (b, f64::INFINITY),
            f: Arc::new(move |c: f64| 1.0 / (PI * (c - b).sqrt())),
        }),
        "thorin:T_x",
    )
}

/// Thorin measure of `T_x` with its multiplier fitted against
/// `−log t_x_laplace` on [`lambda_grid`]; the fit lands on `x/√2`.
pub fn thorin_t_x(law: &DriftedPassageLaw) -> Result<(ThorinMeasure, GgcFit)> {
    if !(law.a > 0.0) {
        return Err(Error::InvalidArgument("Thorin measure of T_x needs a > 0".into()));
    }
    let edge: DensityFn = Arc::new(|_c: f64| 1.0 / PI);
    let unit = ThorinMeasure::new(thorin_t_x_shape(law.a)?, 1.0)?.with_edge(edge.clone());
    let fit = fit_multiplier(
        &|sigma| ggc_exponent(sigma, &unit),
        &|sigma| t_x_exponent(sigma, law),
        &lambda_grid(),
    )?;
    let measure = ThorinMeasure::new(unit.measure, fit.multiplier)?.with_edge(edge);
    Ok((measure, fit))
}

/// Default number of atoms kept in [`thorin_w_a`].
pub const W_ATOMS: usize = 10_000;

/// Atoms `π²n²/(2a²)` of weight 2, `n ≤ atoms`, from
/// `sinh z / z = Π (1 + z²/π²n²)`.
pub fn thorin_w_a(a: f64, atoms: usize) -> Result<ThorinMeasure> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("level a must be positive, got {a}")));
    }
    let atoms = (1..=atoms).map(|n| (w_rate(n, a), 2.0)).collect();
    ThorinMeasure::new(SpectralMeasure::new(atoms, None, "thorin:W_a")?, 1.0)
}

/// Atom locations `n²/a²` as stated, kept for the correspondence report.
pub fn stated_w_atoms(a: f64, atoms: usize) -> Vec<f64> {
    (1..=atoms).map(|n| (n * n) as f64 / (a * a)).collect()
}

/// Lévy density `x e^{−a²t/2}/√(2πt³)` of `T_x` as a subordinator in `σ`.
pub fn t_x_levy_density(t: f64, law: &DriftedPassageLaw) -> f64 {
    law.x * (-0.5 * law.a * law.a * t).exp() / (2.0 * PI * t * t * t).sqrt()
}

/// `Σ_{n≥1} e^{−π²n²t/2a²}`, switching to the theta-dual series for small `t`.
fn w_theta_tail(t: f64, a: f64) -> f64 {
    let s = PI * t / (2.0 * a * a);
    let sum_pos = |s: f64| {
        let mut acc = 0.0;
        for n in 1.. {
            let term = (-PI * (n * n) as f64 * s).exp();
            acc += term;
            if term < 1e-18 * acc.max(1e-300) {
                break;
            }
        }
        acc
    };
    if s >= 1.0 {
        sum_pos(s)
    } else {
        0.5 * ((1.0 + 2.0 * sum_pos(1.0 / s)) / s.sqrt() - 1.0)
    }
}

/// Lévy density `(2/t) Σ e^{−c_n t}` of `W_a`: the gamma mixture of the
/// atoms of [`thorin_w_a`].
pub fn w_a_levy_density(t: f64, a: f64) -> f64 {
    2.0 * w_theta_tail(t, a) / t
}

/// `−∫_0^∞ (e^{−σt} − 1) ℓ(t) dt` after `t = u²`.
pub fn levy_exponent(sigma: f64, levy: &dyn Fn(f64) -> f64) -> Result<f64> {
    let v = exp_sinh(
        |u| {
            let t = u * u;
            -(-sigma * t).exp_m1() * levy(t) * 2.0 * u
        },
        0.0,
        1e-12,
    )?;
    Ok(v)
}

/// Subordinator check: the Lévy-density exponent against the log-Laplace
/// exponent, with the constant fitted on [`lambda_grid`].
pub fn levy_fit(levy: &dyn Fn(f64) -> f64, target: &dyn Fn(f64) -> f64) -> Result<GgcFit> {
    fit_multiplier(&|sigma| levy_exponent(sigma, levy), target, &lambda_grid())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrespondenceCase {
    #[serde(rename = "W_with_a_pi")]
    WWithAPi,
    #[serde(rename = "T_with_a_1")]
    TWithA1,
}

impl CorrespondenceCase {
    pub fn name(self) -> &'static str {
        match self {
            CorrespondenceCase::WWithAPi => "W_with_a_pi",
            CorrespondenceCase::TWithA1 => "T_with_a_1",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "W_with_a_pi" | "w" => Ok(CorrespondenceCase::WWithAPi),
            "T_with_a_1" | "t" => Ok(CorrespondenceCase::TWithA1),
            other => Err(Error::InvalidArgument(format!("unknown correspondence case `{other}`"))),
        }
    }
}

/// Comparison of a Thorin measure with a rank-one spectral measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub case: CorrespondenceCase,
    pub thorin_support: (f64, f64),
    pub spectral_support: (f64, f64),
    /// Largest `|c_thorin − c_spectral|` over the compared atoms.
    pub location_max_deviation: f64,
    pub compared: usize,
    /// Thorin weight (or density) over spectral weight (or density).
    pub ratio: f64,
    pub ratio_max_deviation: f64,
    pub thorin_multiplier: f64,
    pub derived_locations: Vec<f64>,
    pub stated_locations: Vec<f64>,
    pub notes: Vec<String>,
}

const COMPARED_ATOMS: usize = 50;

pub fn correspond_spectral_thorin(case: CorrespondenceCase) -> Result<CorrespondenceReport> {
    match case {
        CorrespondenceCase::WWithAPi => {
            let thorin = thorin_w_a(PI, COMPARED_ATOMS)?;
            let spectral = stated_nu(SpectralIndex::Interval, COMPARED_ATOMS);
            let mut dev: f64 = 0.0;
            let mut ratios = Vec::new();
            for (&(c, w), &(l, v)) in thorin.measure.atoms.iter().zip(&spectral.atoms) {
                dev = dev.max((c - l).abs());
                ratios.push(thorin.multiplier * w / v);
            }
            let ratio = ratios[0];
            let ratio_dev = ratios.iter().map(|r| (r - ratio).abs()).fold(0.0, f64::max);
            Ok(CorrespondenceReport {
                case,
                thorin_support: (thorin.measure.atoms[0].0, f64::INFINITY),
                spectral_support: (spectral.atoms[0].0, f64::INFINITY),
                location_max_deviation: dev,
                compared: ratios.len(),
                ratio,
                ratio_max_deviation: ratio_dev,
                thorin_multiplier: thorin.multiplier,
                derived_locations: thorin.measure.atoms.iter().take(5).map(|a| a.0).collect(),
                stated_locations: stated_w_atoms(PI, 5),
                notes: vec![
                    "atoms pi^2 n^2/(2a^2) of weight 2 reproduce -2 log(lambda a/sinh(lambda a)) in sigma = lambda^2/2"
                        .into(),
                    "stated atom locations n^2/a^2 do not reproduce the Laplace transform".into(),
                    "spectral measure: atoms n^2/2 of weight 1/pi".into(),
                ],
            })
        }
        CorrespondenceCase::TWithA1 => {
            let law = DriftedPassageLaw::new(1.0, 1.0)?;
            let (thorin, fit) = thorin_t_x(&law)?;
            let spectral = stated_nu(SpectralIndex::HalfLine, 0);
            let td = thorin.measure.density.as_ref().expect("T_x Thorin measure has a density");
            let sd = spectral.density.as_ref().expect("half-line spectral measure has a density");
            let cs: Vec<f64> = (0..200).map(|k| 0.5 + 1e-6 * 10f64.powf(k as f64 * 8.0 / 199.0)).collect();
            let ratios: Vec<f64> = cs.iter().map(|&c| thorin.density(c) / sd.eval(c)).collect();
            let ratio = ratios[0];
            let ratio_dev = ratios.iter().map(|r| (r - ratio).abs()).fold(0.0, f64::max);
            Ok(CorrespondenceReport {
                case,
                thorin_support: td.support,
                spectral_support: sd.support,
                location_max_deviation: (td.support.0 - sd.support.0).abs(),
                compared: cs.len(),
                ratio,
                ratio_max_deviation: ratio_dev,
                thorin_multiplier: thorin.multiplier,
                derived_locations: vec![td.support.0],
                stated_locations: vec![0.5],
                notes: vec![
                    format!(
                        "multiplier fitted on {} lambda values, max residual {:e}; analytic value x/sqrt(2)",
                        fit.lambdas.len(),
                        fit.max_residual
                    ),
                    "spectral measure: density 1/(pi sqrt(2 lambda - 1)) on lambda > 1/2".into(),
                ],
            })
        }
    }
}
