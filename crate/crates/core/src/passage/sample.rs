use rand::Rng;
use rand_distr::{Distribution, InverseGaussian, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::laws::{w_a_cdf, w_a_cutoff, w_a_upper, DriftedPassageLaw};
use crate::rng::{path_rng, PathRng};
use crate::stats::mean_stderr;
use crate::{Error, Result};

/// Samples together with the seed that produced them; sample `i` is drawn
/// from stream `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Samples {
    pub seed: u64,
    pub values: Vec<f64>,
}

impl Samples {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> Samples {
        Samples {
            seed: self.seed,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}

fn per_index(n: usize, seed: u64, draw: impl Fn(&mut PathRng) -> f64 + Sync) -> Samples {
    let values = (0..n as u64)
        .into_par_iter()
        .map(|i| draw(&mut path_rng(seed, i)))
        .collect();
    Samples { seed, values }
}

/// Inverse-Gaussian samples of `T_x` with mean `x/a` and shape `x²`, by the
/// chi-square transform with a root-selection step.
pub fn sample_t_x(n: usize, seed: u64, law: &DriftedPassageLaw) -> Result<Samples> {
    if !(law.a > 0.0) {
        return Err(Error::InvalidArgument("the sampler needs a positive drift".into()));
    }
    let ig = InverseGaussian::new(law.x / law.a, law.x * law.x)
        .map_err(|e| Error::InvalidArgument(format!("inverse Gaussian parameters: {e}")))?;
    Ok(per_index(n, seed, |rng| ig.sample(rng)))
}

/// Monotone cubic (Fritsch–Carlson) interpolant of the `W_a` distribution
/// function on an adaptively refined grid.
#[derive(Clone, Debug)]
pub struct WCdfTable {
    pub a: f64,
    pub xs: Vec<f64>,
    pub cdf: Vec<f64>,
    slopes: Vec<f64>,
    /// Largest deviation from the exact distribution function seen at the
    /// interior check points of the final grid.
    pub max_error: f64,
}

const TABLE_TOL: f64 = 1e-9;
const TABLE_MAX_POINTS: usize = 200_000;

fn pchip_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let (d0, d1) = (delta[k - 1], delta[k]);
        if d0 * d1 <= 0.0 {
            continue;
        }
        let w1 = 2.0 * h[k] + h[k - 1];
        let w2 = h[k] + 2.0 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    if n > 2 {
        d[0] = end(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    } else {
        d[0] = delta[0];
        d[1] = delta[0];
    }
    d
}

impl WCdfTable {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidArgument(format!("level a must be positive, got {a}")));
        }
        let lo = w_a_cutoff(a);
        let hi = w_a_upper(a);
        let mut xs: Vec<f64> = (0..=64).map(|k| lo + (hi - lo) * k as f64 / 64.0).collect();
        loop {
            let cdf: Vec<f64> = xs.iter().map(|&x| w_a_cdf(x, a)).collect();
            let slopes = pchip_slopes(&xs, &cdf);
            let mut table = WCdfTable {
                a,
                xs,
                cdf,
                slopes,
                max_error: 0.0,
            };
            let mut refined = Vec::with_capacity(table.xs.len() * 2);
            let mut split = false;
            for k in 0..table.xs.len() - 1 {
                refined.push(table.xs[k]);
                let (x0, x1) = (table.xs[k], table.xs[k + 1]);
                let err = [0.25, 0.5, 0.75]
                    .iter()
                    .map(|t| (table.hermite(k, *t) - w_a_cdf(x0 + t * (x1 - x0), a)).abs())
                    .fold(0.0, f64::max);
                table.max_error = table.max_error.max(err);
                if err > TABLE_TOL {
                    refined.push(0.5 * (x0 + x1));
                    split = true;
                }
            }
            refined.push(*table.xs.last().unwrap());
            if !split {
                return Ok(table);
            }
            if refined.len() > TABLE_MAX_POINTS {
                return Err(Error::NoConvergence {
                    method: "W_a distribution table refinement",
                    iterations: refined.len(),
                    residual: table.max_error,
                });
            }
            xs = refined;
        }
    }

    fn hermite(&self, k: usize, t: f64) -> f64 {
        let h = self.xs[k + 1] - self.xs[k];
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.cdf[k] + h10 * h * self.slopes[k] + h01 * self.cdf[k + 1] + h11 * h * self.slopes[k + 1]
    }

    /// Interpolated distribution function.
    pub fn cdf_at(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x <= self.xs[0] {
            return self.cdf[0];
        }
        if x >= self.xs[last] {
            return self.cdf[last];
        }
        let k = self.xs.partition_point(|&v| v <= x) - 1;
        self.hermite(k, (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]))
    }

    /// Generalized inverse of the interpolant, by bisection inside the cell.
    pub fn quantile(&self, u: f64) -> f64 {
        let last = self.xs.len() - 1;
        if u <= self.cdf[0] {
            return self.xs[0];
        }
        if u >= self.cdf[last] {
            return self.xs[last];
        }
        let k = self.cdf.partition_point(|&v| v <= u).saturating_sub(1).min(last - 1);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.hermite(k, mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.xs[k] + 0.5 * (lo + hi) * (self.xs[k + 1] - self.xs[k])
    }
}

/// `W_a` samples by inverse-CDF on a [`WCdfTable`].
pub fn sample_w_a(n: usize, seed: u64, a: f64) -> Result<Samples> {
    let table = WCdfTable::new(a)?;
    Ok(sample_w_a_with(&table, n, seed))
}

pub fn sample_w_a_with(table: &WCdfTable, n: usize, seed: u64) -> Samples {
    per_index(n, seed, |rng| table.quantile(rng.random::<f64>()))
}

/// Default step of the path sampler.
pub const PATH_STEP: f64 = 1e-4;

/// Exit time of `|B|` from the ball of radius `a` for a three-dimensional
/// Brownian motion started at the origin. Between grid points a crossing is
/// detected with the half-space bridge probability
/// `exp(−2(a−r₀)(a−r₁)/h)`.
fn bessel3_exit(a: f64, h: f64, rng: &mut PathRng) -> f64 {
    let sd = h.sqrt();
    let mut b = [0.0f64; 3];
    let mut r0 = 0.0;
    let mut t = 0.0;
    loop {
        for c in b.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *c += sd * z;
        }
        let r1 = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        if r1 >= a {
            return t + h * (a - r0) / (r1 - r0);
        }
        let p = (-2.0 * (a - r0) * (a - r1) / h).exp();
        if rng.random::<f64>() < p {
            return t + 0.5 * h;
        }
        r0 = r1;
        t += h;
    }
}

/// `S_a` (or `W_a` when `doubled`) by simulating the norm of a
/// three-dimensional Brownian motion with step `h`.
pub fn sample_bessel_paths(n: usize, seed: u64, a: f64, doubled: bool, h: f64) -> Result<Samples> {
    if !(a > 0.0) || !(h > 0.0) {
        return Err(Error::InvalidArgument("path sampler needs a > 0 and h > 0".into()));
    }
    Ok(per_index(n, seed, |rng| {
        let s = bessel3_exit(a, h, rng);
        if doubled {
            s + bessel3_exit(a, h, rng)
        } else {
            s
        }
    }))
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

pub const MC_MIN_SAMPLES: usize = 1000;

impl MCEstimate {
    /// `|value − target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.stderr == 0.0 {
            if self.value == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.value - target).abs() / self.stderr
        }
    }
}

/// Sample mean of `T^s` with its standard error.
pub fn mc_mellin(samples: &Samples, s: f64) -> Result<MCEstimate> {
    if samples.len() < MC_MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "at least {MC_MIN_SAMPLES} samples are required, got {}",
            samples.len()
        )));
    }
    let powers: Vec<f64> = samples.values.iter().map(|v| v.powf(s)).collect();
    if powers.iter().any(|p| !p.is_finite()) {
        return Err(Error::Overflow("sample moment"));
    }
    let (value, stderr) = mean_stderr(&powers);
    if !value.is_finite() || !stderr.is_finite() {
        return Err(Error::Overflow("sample moment"));
    }
    Ok(MCEstimate {
        value,
        stderr,
        n_samples: samples.len(),
        seed: samples.seed,
    })
}
