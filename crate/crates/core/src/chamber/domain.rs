use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::harmonic::{h_rho_raw, h_u_raw, rho_sorted, vandermonde_raw};
use super::points::{is_chamber_interior, is_simplex_interior};
use crate::{Error, Result};

/// Which reflection-group domain a kernel lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainFamily {
    /// Weyl chamber, Brownian motion killed on the walls.
    Chamber,
    /// Weyl chamber, Brownian motion with drift ρ killed on the walls.
    ChamberDrift,
    /// Alcove of the affine Weyl group (eigenangles of `SU(n)`).
    Simplex,
}

impl DomainFamily {
    pub const ALL: [DomainFamily; 3] = [Self::Chamber, Self::ChamberDrift, Self::Simplex];

    pub fn name(self) -> &'static str {
        match self {
            Self::Chamber => "chamber",
            Self::ChamberDrift => "chamber_drift",
            Self::Simplex => "simplex",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown kernel family `{name}`")))
    }
}

/// Parameters selecting one killed semigroup and its h-transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: DomainFamily,
    pub n: usize,
    /// Drift vector in the descending chamber convention (`chamber_drift`).
    pub drift: Option<Vec<f64>>,
    /// Lattice box radius for the affine reflection sum (`simplex`); when
    /// absent a radius is chosen from `t`.
    pub truncation: Option<usize>,
}

impl KernelSpec {
    pub fn chamber(n: usize) -> Self {
        Self {
            family: DomainFamily::Chamber,
            n,
            drift: None,
            truncation: None,
        }
    }

    pub fn chamber_drift(n: usize) -> Self {
        Self {
            family: DomainFamily::ChamberDrift,
            n,
            drift: Some(rho_sorted(n)),
            truncation: None,
        }
    }

    pub fn simplex(n: usize) -> Self {
        Self {
            family: DomainFamily::Simplex,
            n,
            drift: None,
            truncation: None,
        }
    }

    pub fn with_truncation(mut self, k: usize) -> Self {
        self.truncation = Some(k);
        self
    }

    pub fn new(family: DomainFamily, n: usize) -> Self {
        match family {
            DomainFamily::Chamber => Self::chamber(n),
            DomainFamily::ChamberDrift => Self::chamber_drift(n),
            DomainFamily::Simplex => Self::simplex(n),
        }
    }

    /// Instantiates the domain behind the common [`WeylDomain`] interface.
    pub fn domain(&self) -> Result<Box<dyn WeylDomain>> {
        if !(2..=8).contains(&self.n) {
            return Err(Error::InvalidArgument(format!("dimension {} not supported", self.n)));
        }
        Ok(match self.family {
            DomainFamily::Chamber => Box::new(Chamber { n: self.n }),
            DomainFamily::ChamberDrift => {
                let rho = self.drift.clone().unwrap_or_else(|| rho_sorted(self.n));
                if rho != rho_sorted(self.n) {
                    return Err(Error::InvalidArgument(
                        "chamber_drift requires ρ = (n−1, n−3, …, 1−n)".into(),
                    ));
                }
                Box::new(ChamberDrift { n: self.n, rho })
            }
            DomainFamily::Simplex => {
                if self.n > 4 {
                    return Err(Error::InvalidArgument(
                        "affine reflection sums are only supported for n ≤ 4".into(),
                    ));
                }
                Box::new(Simplex {
                    n: self.n,
                    truncation: self.truncation,
                })
            }
        })
    }
}

/// A killed Brownian semigroup on a fundamental domain of a reflection
/// group, together with the positive function used for its h-transform.
pub trait WeylDomain: Send + Sync {
    fn family(&self) -> DomainFamily;
    fn dim(&self) -> usize;
    fn is_interior(&self, x: &[f64]) -> bool;
    /// Killed transition density w.r.t. Lebesgue measure on `H_n`.
    fn killed(&self, t: f64, x: &[f64], y: &[f64]) -> f64;
    /// The positive (eigen)function `h` vanishing on the walls.
    fn harmonic(&self, x: &[f64]) -> f64;
    /// `λ` with `∫ p⁰_t(x, y) h(y) dy = e^{λ t} h(x)`; zero when harmonic.
    fn eigenvalue(&self) -> f64;
    /// Drift of the h-transformed diffusion (`∇ log h`, plus the killed
    /// process's own drift).
    fn drift(&self, x: &[f64], out: &mut [f64]);
    /// Smallest root-hyperplane gap; used for step control near walls.
    fn wall_gap(&self, x: &[f64]) -> f64;
}

struct Permutations {
    perms: Vec<Vec<usize>>,
    signs: Vec<f64>,
}

fn permutations(n: usize) -> &'static Permutations {
    static CACHE: [OnceLock<Permutations>; 9] = [const { OnceLock::new() }; 9];
    CACHE[n].get_or_init(|| {
        let mut perms = Vec::new();
        let mut signs = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        permute(&mut p, 0, 1.0, &mut perms, &mut signs);
        Permutations { perms, signs }
    })
}

fn permute(p: &mut Vec<usize>, k: usize, sign: f64, out: &mut Vec<Vec<usize>>, signs: &mut Vec<f64>) {
    if k == p.len() {
        out.push(p.clone());
        signs.push(sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, if i == k { sign } else { -sign }, out, signs);
        p.swap(k, i);
    }
}

fn gaussian_norm(t: f64, n: usize) -> f64 {
    (2.0 * PI * t).powf(-((n - 1) as f64) / 2.0)
}

/// `Σ_σ ε(σ) exp(−|x − σy − shift|²/2t)` without the normalization.
fn alternating_sum(t: f64, x: &[f64], y: &[f64], shift: Option<&[f64]>) -> f64 {
    let n = x.len();
    let perms = permutations(n);
    let mut total = 0.0;
    for (p, s) in perms.perms.iter().zip(&perms.signs) {
        let mut d2 = 0.0;
        for i in 0..n {
            let target = y[p[i]] + shift.map_or(0.0, |v| v[i]);
            let d = x[i] - target;
            d2 += d * d;
        }
        let e = -d2 / (2.0 * t);
        if e > -745.0 {
            total += s * e.exp();
        }
    }
    total
}

struct Chamber {
    n: usize,
}

impl WeylDomain for Chamber {
    fn family(&self) -> DomainFamily {
        DomainFamily::Chamber
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn is_interior(&self, x: &[f64]) -> bool {
        is_chamber_interior(x)
    }
    fn killed(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        gaussian_norm(t, self.n) * alternating_sum(t, x, y, None)
    }
    fn harmonic(&self, x: &[f64]) -> f64 {
        vandermonde_raw(x)
    }
    fn eigenvalue(&self) -> f64 {
        0.0
    }
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            out[i] = (0..self.n).filter(|&j| j != i).map(|j| 1.0 / (x[i] - x[j])).sum();
        }
    }
    fn wall_gap(&self, x: &[f64]) -> f64 {
        x.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min)
    }
}

struct ChamberDrift {
    n: usize,
    rho: Vec<f64>,
}

impl WeylDomain for ChamberDrift {
    fn family(&self) -> DomainFamily {
        DomainFamily::ChamberDrift
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn is_interior(&self, x: &[f64]) -> bool {
        is_chamber_interior(x)
    }
    fn killed(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        let tilt: f64 = self.rho.iter().zip(y.iter().zip(x)).map(|(r, (b, a))| r * (b - a)).sum();
        let rho2: f64 = self.rho.iter().map(|r| r * r).sum();
        (tilt - 0.5 * t * rho2).exp() * gaussian_norm(t, self.n) * alternating_sum(t, x, y, None)
    }
    fn harmonic(&self, x: &[f64]) -> f64 {
        h_rho_raw(x)
    }
    fn eigenvalue(&self) -> f64 {
        0.0
    }
    // ρ + ∇ log h_ρ = ∇ log ∏ sinh(y_i − y_j), i.e. Σ_j coth(y_i − y_j).
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            out[i] = (0..self.n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (x[i] - x[j]).tanh())
                .sum();
        }
    }
    fn wall_gap(&self, x: &[f64]) -> f64 {
        x.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min)
    }
}

/// Lattice `2π(Z^n ∩ H_n)` inside a box, sorted by norm.
fn lattice(n: usize, radius: usize) -> Vec<(f64, Vec<f64>)> {
    let r = radius as i64;
    let mut out = Vec::new();
    let mut m = vec![-r; n - 1];
    loop {
        let last: i64 = -m.iter().sum::<i64>();
        if last.abs() <= r {
            let v: Vec<f64> = m
                .iter()
                .copied()
                .chain(std::iter::once(last))
                .map(|k| 2.0 * PI * k as f64)
                .collect();
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            out.push((norm, v));
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                out.sort_by(|a, b| a.0.total_cmp(&b.0));
                return out;
            }
            m[i] += 1;
            if m[i] <= r {
                break;
            }
            m[i] = -r;
            i += 1;
        }
    }
}

fn lattice_cached(n: usize, radius: usize) -> &'static [(f64, Vec<f64>)] {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), &'static [(f64, Vec<f64>)]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    *guard
        .entry((n, radius))
        .or_insert_with(|| Box::leak(lattice(n, radius).into_boxed_slice()))
}

/// Default lattice radius: 6 for `t ≤ 1`, growing like `√t`.
pub fn default_truncation(t: f64) -> usize {
    (6.0 * t.sqrt()).ceil().max(6.0) as usize
}

/// Exponent below which a Gaussian term is dropped from the reflection sum.
const TAIL_EXPONENT: f64 = 745.0;

struct Simplex {
    n: usize,
    truncation: Option<usize>,
}

impl Simplex {
    fn killed_with_radius(&self, t: f64, x: &[f64], y: &[f64], radius: usize) -> f64 {
        let n = self.n;
        let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        // |x − σy − k| ≥ |k| − |x| − |y|, so terms beyond this norm are
        // below e^{−745} and cannot change the sum.
        let cutoff = nx + ny + (2.0 * t * TAIL_EXPONENT).sqrt();
        let mut total = 0.0;
        for (norm, shift) in lattice_cached(n, radius) {
            if *norm > cutoff {
                break;
            }
            total += alternating_sum(t, x, y, Some(shift));
        }
        gaussian_norm(t, n) * total
    }
}

impl WeylDomain for Simplex {
    fn family(&self) -> DomainFamily {
        DomainFamily::Simplex
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn is_interior(&self, x: &[f64]) -> bool {
        is_simplex_interior(x)
    }
    fn killed(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        let radius = self.truncation.unwrap_or_else(|| default_truncation(t));
        self.killed_with_radius(t, x, y, radius)
    }
    fn harmonic(&self, x: &[f64]) -> f64 {
        h_u_raw(x)
    }
    fn eigenvalue(&self) -> f64 {
        simplex_ground_eigenvalue(self.n)
    }
    fn drift(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            out[i] = (0..self.n)
                .filter(|&j| j != i)
                .map(|j| 0.5 / (0.5 * (x[i] - x[j])).tan())
                .sum();
        }
    }
    fn wall_gap(&self, x: &[f64]) -> f64 {
        let inner = x.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
        inner.min(2.0 * PI - (x[0] - x[self.n - 1]))
    }
}

/// Ground Dirichlet eigenvalue of `½Δ` on the alcove `θ₁ − θ_n ≤ 2π`:
/// `−|ρ|²/2` with `ρ` the half-sum of positive roots, i.e. `−n(n²−1)/24`.
pub fn simplex_ground_eigenvalue(n: usize) -> f64 {
    let n = n as f64;
    -n * (n * n - 1.0) / 24.0
}

/// The closed form `(n − n³)/6` quoted for the same eigenvalue.
pub fn simplex_eigenvalue_formula(n: usize) -> f64 {
    let n = n as f64;
    (n - n * n * n) / 6.0
}

fn validate(domain: &dyn WeylDomain, t: f64, x: &[f64], y: &[f64]) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be positive, got {t}")));
    }
    let n = domain.dim();
    if x.len() != n || y.len() != n {
        return Err(Error::InvalidArgument(format!("points must have length {n}")));
    }
    let on_plane = |v: &[f64]| v.iter().sum::<f64>().abs() <= 1e-12 * v.iter().fold(1.0f64, |m, a| m.max(a.abs()));
    if !on_plane(x) || !on_plane(y) {
        return Err(Error::InvalidArgument("points must have zero coordinate sum".into()));
    }
    if !domain.is_interior(x) || !domain.is_interior(y) {
        return Err(Error::Domain(domain.family().name()));
    }
    Ok(())
}

/// Killed transition density `p⁰_t(x, y)` for the family in `spec`.
pub fn killed_kernel(spec: &KernelSpec, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    let domain = spec.domain()?;
    validate(domain.as_ref(), t, x, y)?;
    Ok(clamp(domain.killed(t, x, y)))
}

/// Doob-transformed density `h(y)/h(x) e^{−λt} p⁰_t(x, y)`.
pub fn doob_kernel(spec: &KernelSpec, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    let domain = spec.domain()?;
    validate(domain.as_ref(), t, x, y)?;
    Ok(doob_unchecked(domain.as_ref(), t, x, y))
}

pub(crate) fn doob_unchecked(domain: &dyn WeylDomain, t: f64, x: &[f64], y: &[f64]) -> f64 {
    let p = clamp(domain.killed(t, x, y));
    domain.harmonic(y) / domain.harmonic(x) * (-domain.eigenvalue() * t).exp() * p
}

fn clamp(v: f64) -> f64 {
    if v < 0.0 && v > -1e-12 {
        0.0
    } else {
        v.max(0.0)
    }
}
