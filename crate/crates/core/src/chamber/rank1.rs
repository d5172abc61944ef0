//! Rank-one radial generators and their eigenfunction expansions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::quad::gl_panels;
use crate::{Error, Result};

/// One-dimensional generators arising as radial parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank1Kind {
    /// `½f″ + f′/x` on `(0, ∞)`.
    Bessel3,
    /// `½f″ + coth(x) f′` on `(0, ∞)`.
    Hyperbolic,
    /// `½f″ + cot(x) f′` on `(0, π)`.
    Circular,
    /// `½f″` on `(0, ∞)`.
    KilledBm,
    /// `½f″ + f′` on `(0, ∞)`.
    DriftedBm,
}

impl Rank1Kind {
    pub fn upper(self) -> f64 {
        match self {
            Self::Circular => PI,
            _ => f64::INFINITY,
        }
    }

    fn first_order(self, x: f64) -> f64 {
        match self {
            Self::Bessel3 => 1.0 / x,
            Self::Hyperbolic => 1.0 / x.tanh(),
            Self::Circular => 1.0 / x.tan(),
            Self::KilledBm => 0.0,
            Self::DriftedBm => 1.0,
        }
    }
}

/// Step of the five-point difference stencils.
pub const FD_STEP: f64 = 1e-3;

/// First and second derivatives by fourth-order central differences.
pub fn derivatives(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
    let (fm2, fm1, f0, fp1, fp2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (d1, d2)
}

/// Applies the generator of `kind` to `f` at `x`.
pub fn rank1_generator_apply(kind: Rank1Kind, f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    let h = FD_STEP;
    if !(x > 2.0 * h && x < kind.upper() - 2.0 * h) {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            range: if kind == Rank1Kind::Circular { "(0, π)" } else { "(0, ∞)" },
        });
    }
    let (d1, d2) = derivatives(f, x, h);
    Ok(0.5 * d2 + kind.first_order(x) * d1)
}

/// Which of the two rank-one expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralIndex {
    /// Killed `½d²/dx²` on `[0, π]`, discrete spectrum.
    Interval,
    /// `½f″ + f′` on the half-line, continuous spectrum above `1/2`.
    HalfLine,
}

impl SpectralIndex {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::Interval),
            2 => Ok(Self::HalfLine),
            _ => Err(Error::InvalidArgument(format!("spectral index must be 1 or 2, got {i}"))),
        }
    }
}

/// `Φ¹_λ(x) = sin(√(2λ) x)` or `Φ²_λ(x) = e^{−x} sin(√(2λ−1) x)`.
pub fn spectral_phi(index: SpectralIndex, lambda: f64, x: f64) -> Result<f64> {
    match index {
        SpectralIndex::Interval => {
            if !(lambda > 0.0) {
                return Err(Error::OutOfRange { what: "λ", value: lambda, range: "(0, ∞)" });
            }
            if !(0.0..=PI).contains(&x) {
                return Err(Error::OutOfRange { what: "x", value: x, range: "[0, π]" });
            }
            Ok(((2.0 * lambda).sqrt() * x).sin())
        }
        SpectralIndex::HalfLine => {
            if !(lambda > 0.5) {
                return Err(Error::OutOfRange { what: "λ", value: lambda, range: "(1/2, ∞)" });
            }
            if !(x >= 0.0) {
                return Err(Error::OutOfRange { what: "x", value: x, range: "[0, ∞)" });
            }
            Ok((-x).exp() * ((2.0 * lambda - 1.0).sqrt() * x).sin())
        }
    }
}

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Absolutely continuous part of a [`SpectralMeasure`].
#[derive(Clone)]
pub struct Density {
    pub support: (f64, f64),
    pub f: DensityFn,
}

impl Density {
    pub fn eval(&self, x: f64) -> f64 {
        if x > self.support.0 && x < self.support.1 {
            (self.f)(x)
        } else {
            0.0
        }
    }
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Density").field("support", &self.support).finish_non_exhaustive()
    }
}

/// Positive measure on the line: finitely many atoms plus an optional density.
#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    pub atoms: Vec<(f64, f64)>,
    pub density: Option<Density>,
    pub tag: String,
}

impl SpectralMeasure {
    pub fn new(atoms: Vec<(f64, f64)>, density: Option<Density>, tag: impl Into<String>) -> Result<Self> {
        if let Some(&(loc, w)) = atoms.iter().find(|a| !(a.1 > 0.0) || !a.0.is_finite()) {
            return Err(Error::InvalidArgument(format!("atom at {loc} has weight {w}")));
        }
        if let Some(d) = &density {
            if !(d.support.0 < d.support.1) {
                return Err(Error::InvalidArgument("density support is empty".into()));
            }
        }
        Ok(Self {
            atoms,
            density,
            tag: tag.into(),
        })
    }

    /// `∫ g dν` with the density part on `[lo, hi] ∩ support` by GL panels.
    pub fn integrate_density(&self, g: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
        match &self.density {
            None => 0.0,
            Some(d) => {
                let a = lo.max(d.support.0);
                let b = hi.min(d.support.1);
                if a >= b {
                    0.0
                } else {
                    gl_panels(|x| d.eval(x) * g(x), a, b, panels)
                }
            }
        }
    }
}

/// The measures exactly as stated: atoms `n²/2` of mass `1/π`, and
/// density `1/(π√(2λ−1))` on `λ > 1/2`.
pub fn stated_nu(index: SpectralIndex, atoms: usize) -> SpectralMeasure {
    spectral_measure(index, atoms, 1.0 / PI, "stated")
}

/// Measures for which the expansion reconstructs `f` with unit factor; they
/// are twice the stated ones.
pub fn plancherel_nu(index: SpectralIndex, atoms: usize) -> SpectralMeasure {
    spectral_measure(index, atoms, 2.0 / PI, "plancherel")
}

fn spectral_measure(index: SpectralIndex, atoms: usize, c: f64, tag: &str) -> SpectralMeasure {
    match index {
        SpectralIndex::Interval => SpectralMeasure {
            atoms: (1..=atoms).map(|n| ((n * n) as f64 / 2.0, c)).collect(),
            density: None,
            tag: format!("{tag}:interval"),
        },
        SpectralIndex::HalfLine => SpectralMeasure {
            atoms: Vec::new(),
            density: Some(Density {
                support: (0.5, f64::INFINITY),
                f: Arc::new(move |l: f64| c / (2.0 * l - 1.0).sqrt()),
            }),
            tag: format!("{tag}:half_line"),
        },
    }
}

/// Truncation and quadrature controls for [`spectral_reconstruct`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructOptions {
    /// Number of sine modes on the interval.
    pub modes: usize,
    /// Upper cut-off in the frequency `k = √(2λ−1)` on the half-line.
    pub k_max: f64,
    /// GL panels per unit length for the inner transforms.
    pub panels_per_unit: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            modes: 64,
            k_max: 400.0,
            panels_per_unit: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconstruction {
    pub value: f64,
    /// `(λ, ν({λ}) ⟨f, Φ_λ⟩)` for every atom.
    pub atom_terms: Vec<(f64, f64)>,
}

/// Evaluates `∫ ν(dλ) Φ_λ(x) ⟨f, Φ_λ⟩_m` at `x`. On the half-line `f` must
/// vanish outside `support`.
pub fn spectral_reconstruct(
    index: SpectralIndex,
    measure: &SpectralMeasure,
    f: &dyn Fn(f64) -> f64,
    support: (f64, f64),
    x: f64,
    opts: &ReconstructOptions,
) -> Result<Reconstruction> {
    let (lo, hi) = support;
    if !(lo < hi) || !hi.is_finite() || lo < 0.0 {
        return Err(Error::InvalidArgument("f needs a compact support in [0, ∞)".into()));
    }
    let panels = |width: f64, k: f64| -> usize {
        let osc = (k * width / PI).ceil() as usize;
        (opts.panels_per_unit as f64 * width).ceil().max(1.0) as usize + osc
    };
    match index {
        SpectralIndex::Interval => {
            if hi > PI {
                return Err(Error::InvalidArgument("support must lie in [0, π]".into()));
            }
            let mut atom_terms = Vec::with_capacity(measure.atoms.len());
            let mut value = 0.0;
            for &(lambda, w) in measure.atoms.iter().take(opts.modes.max(measure.atoms.len())) {
                let k = (2.0 * lambda).sqrt();
                let coef = gl_panels(|y| f(y) * (k * y).sin(), lo, hi, panels(hi - lo, k));
                let term = w * coef;
                atom_terms.push((lambda, term));
                value += term * spectral_phi(index, lambda, x)?;
            }
            Ok(Reconstruction { value, atom_terms })
        }
        SpectralIndex::HalfLine => {
            let density = measure
                .density
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("half-line expansion needs a density".into()))?;
            // λ = (1 + k²)/2, dλ = k dk; ⟨f, Φ_λ⟩ = ∫ f(y) e^{y} sin(ky) dy.
            let transform = |k: f64| gl_panels(|y| f(y) * y.exp() * (k * y).sin(), lo, hi, panels(hi - lo, k));
            let integrand = |k: f64| {
                if k <= 0.0 {
                    return 0.0;
                }
                let lambda = 0.5 * (1.0 + k * k);
                density.eval(lambda) * k * (-x).exp() * (k * x).sin() * transform(k)
            };
            let k_panels = (opts.k_max * (x.max(hi) + 1.0) / PI).ceil() as usize;
            let value = gl_panels(integrand, 0.0, opts.k_max, k_panels.max(16));
            Ok(Reconstruction {
                value,
                atom_terms: Vec::new(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let v = rank1_generator_apply(Rank1Kind::Bessel3, &|x| x, 2.0).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
        let v = rank1_generator_apply(Rank1Kind::Circular, &f64::sin, PI / 2.0).unwrap();
        assert!((v + 0.5).abs() < 1e-9);
        assert!(rank1_generator_apply(Rank1Kind::Circular, &f64::sin, 4.0).is_err());
        assert!(rank1_generator_apply(Rank1Kind::Bessel3, &f64::sin, -1.0).is_err());
    }

    #[test]
    fn phi_examples() {
        assert!((spectral_phi(SpectralIndex::Interval, 0.5, PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(spectral_phi(SpectralIndex::Interval, 2.0, PI).unwrap().abs() < 1e-15);
        let v = spectral_phi(SpectralIndex::HalfLine, 1.0, 1.0).unwrap();
        assert!((v - 0.309560).abs() < 1e-6);
        assert!(spectral_phi(SpectralIndex::HalfLine, 0.5, 1.0).is_err());
    }

    #[test]
    fn single_mode_uses_one_atom() {
        let nu = plancherel_nu(SpectralIndex::Interval, 16);
        let f = |x: f64| (2.0 * x).sin();
        let r = spectral_reconstruct(SpectralIndex::Interval, &nu, &f, (0.0, PI), 1.1, &Default::default()).unwrap();
        assert!((r.value - f(1.1)).abs() < 1e-10);
        for (lambda, term) in r.atom_terms {
            if lambda == 2.0 {
                assert!((term - 1.0).abs() < 1e-12);
            } else {
                assert!(term.abs() < 1e-12, "λ = {lambda}: {term}");
            }
        }
    }

    #[test]
    fn measures_reject_nonpositive_atoms() {
        assert!(SpectralMeasure::new(vec![(1.0, 0.0)], None, "x").is_err());
        assert!(SpectralMeasure::new(vec![(1.0, 2.0)], None, "x").is_ok());
    }
}
