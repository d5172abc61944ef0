use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::domain::{KernelSpec, WeylDomain};
use crate::matrix_bm::TimeGrid;
use crate::rng::{path_rng, PathRng};
use crate::{Error, Result};

/// Largest grid step accepted by the conditioned simulators.
pub const MAX_STEP: f64 = 1e-3;

/// Local steps are halved while the smallest wall gap is below this many
/// multiples of `√h`.
const GAP_FACTOR: f64 = 10.0;
const MAX_HALVINGS: u32 = 30;
const MAX_RESTARTS: usize = 20;

/// One path of a conditioned diffusion on the grid.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionedPath {
    pub grid: TimeGrid,
    pub states: Vec<Vec<f64>>,
    pub seed: u64,
    /// Number of times the path was redrawn with a halved step after leaving
    /// the domain numerically.
    pub resampled: usize,
}

/// Terminal states of a batch of conditioned paths.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionedEndpoints {
    pub endpoints: Vec<Vec<f64>>,
    pub resampled: usize,
}

fn check(domain: &dyn WeylDomain, x0: &[f64], grid: &TimeGrid) -> Result<()> {
    if grid.step() > MAX_STEP {
        return Err(Error::StepTooLarge {
            step: grid.step(),
            limit: MAX_STEP,
        });
    }
    if x0.len() != domain.dim() {
        return Err(Error::InvalidArgument(format!("start point must have length {}", domain.dim())));
    }
    if !domain.is_interior(x0) || !(domain.harmonic(x0) > 0.0) {
        return Err(Error::Domain(domain.family().name()));
    }
    Ok(())
}

/// Euler–Maruyama for `dX = ∇log h(X) dt + dB` on `H_n`, started at `x0`.
pub fn simulate_conditioned(spec: &KernelSpec, x0: &[f64], grid: &TimeGrid, seed: u64) -> Result<ConditionedPath> {
    let domain = spec.domain()?;
    check(domain.as_ref(), x0, grid)?;
    let (states, resampled) = run(domain.as_ref(), x0, grid, &mut path_rng(seed, 0), true)?;
    Ok(ConditionedPath {
        grid: *grid,
        states,
        seed,
        resampled,
    })
}

/// `paths` independent copies; path `i` uses stream `i` of `seed`.
pub fn simulate_conditioned_endpoints(
    spec: &KernelSpec,
    x0: &[f64],
    grid: &TimeGrid,
    seed: u64,
    paths: usize,
) -> Result<ConditionedEndpoints> {
    let domain = spec.domain()?;
    check(domain.as_ref(), x0, grid)?;
    let results: Vec<(Vec<f64>, usize)> = (0..paths)
        .into_par_iter()
        .map(|i| {
            let (mut s, r) = run(domain.as_ref(), x0, grid, &mut path_rng(seed, i as u64), false)?;
            Ok((s.pop().expect("path has a terminal state"), r))
        })
        .collect::<Result<_>>()?;
    let resampled = results.iter().map(|r| r.1).sum();
    Ok(ConditionedEndpoints {
        endpoints: results.into_iter().map(|r| r.0).collect(),
        resampled,
    })
}

fn run(
    domain: &dyn WeylDomain,
    x0: &[f64],
    grid: &TimeGrid,
    rng: &mut PathRng,
    record: bool,
) -> Result<(Vec<Vec<f64>>, usize)> {
    let mut base = grid.step();
    for restart in 0..=MAX_RESTARTS {
        if let Some(states) = attempt(domain, x0, grid, base, rng, record) {
            return Ok((states, restart));
        }
        base *= 0.5;
    }
    Err(Error::NoConvergence {
        method: "conditioned Euler–Maruyama",
        iterations: MAX_RESTARTS,
        residual: base,
    })
}

fn attempt(
    domain: &dyn WeylDomain,
    x0: &[f64],
    grid: &TimeGrid,
    base: f64,
    rng: &mut PathRng,
    record: bool,
) -> Option<Vec<Vec<f64>>> {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut drift = vec![0.0; n];
    let mut noise = vec![0.0; n];
    let mut states = Vec::with_capacity(if record { grid.len() } else { 1 });
    if record {
        states.push(x.clone());
    }
    let min_step = base * 0.5f64.powi(MAX_HALVINGS as i32);
    for _ in 0..grid.steps() {
        let mut remaining = grid.step();
        while remaining > 0.0 {
            let gap = domain.wall_gap(&x);
            let mut dt = base;
            while gap < GAP_FACTOR * dt.sqrt() && dt > min_step {
                dt *= 0.5;
            }
            if dt >= remaining * (1.0 - 1e-12) {
                dt = remaining;
            }
            domain.drift(&x, &mut drift);
            let sd = dt.sqrt();
            for z in noise.iter_mut() {
                *z = rng.sample(StandardNormal);
            }
            let mean = noise.iter().sum::<f64>() / n as f64;
            for i in 0..n {
                x[i] += drift[i] * dt + sd * (noise[i] - mean);
            }
            let shift = x.iter().sum::<f64>() / n as f64;
            x.iter_mut().for_each(|v| *v -= shift);
            if !domain.is_interior(&x) || !(domain.harmonic(&x) >= 1e-300) {
                return None;
            }
            remaining -= dt;
        }
        if record {
            states.push(x.clone());
        }
    }
    if !record {
        states.push(x);
    }
    Some(states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_grid() {
        let grid = TimeGrid::to_horizon(1.0, 0.01).unwrap();
        let err = simulate_conditioned(&KernelSpec::chamber(2), &[1.0, -1.0], &grid, 1).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }

    #[test]
    fn paths_stay_inside_and_are_reproducible() {
        let grid = TimeGrid::to_horizon(0.2, 1e-3).unwrap();
        for spec in [KernelSpec::chamber(3), KernelSpec::chamber_drift(3), KernelSpec::simplex(3)] {
            let x0 = [0.3, 0.0, -0.3];
            let a = simulate_conditioned(&spec, &x0, &grid, 11).unwrap();
            let b = simulate_conditioned(&spec, &x0, &grid, 11).unwrap();
            assert_eq!(a.states, b.states);
            assert_eq!(a.states.len(), grid.len());
            let domain = spec.domain().unwrap();
            assert!(a.states.iter().all(|s| domain.is_interior(s)));
        }
    }

    #[test]
    fn batch_matches_single_stream_zero() {
        let grid = TimeGrid::to_horizon(0.05, 1e-3).unwrap();
        let spec = KernelSpec::chamber(2);
        let single = simulate_conditioned(&spec, &[0.5, -0.5], &grid, 5).unwrap();
        let batch = simulate_conditioned_endpoints(&spec, &[0.5, -0.5], &grid, 5, 3).unwrap();
        assert_eq!(&batch.endpoints[0], single.states.last().unwrap());
    }
}
