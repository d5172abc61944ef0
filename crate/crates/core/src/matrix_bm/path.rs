use rayon::prelude::*;

use super::family::{Family, HermitianFamily, MatrixFamily, SlFamily, SuFamily};
use super::TimeGrid;
use crate::linalg::{ComplexMatrix, SpecialUnitary};
use crate::rng::{path_rng, PathRng};
use crate::{Error, Result};

/// A sampled path: one state per grid point.
#[derive(Clone, Debug)]
pub struct MatrixPath {
    pub grid: TimeGrid,
    pub states: Vec<ComplexMatrix>,
    pub family: Family,
    pub seed: u64,
}

impl MatrixPath {
    pub fn last(&self) -> &ComplexMatrix {
        self.states.last().expect("paths hold at least the initial state")
    }
}

fn check_step(family: &dyn MatrixFamily, grid: &TimeGrid) -> Result<()> {
    if grid.step() > family.max_step() {
        return Err(Error::StepTooLarge {
            step: grid.step(),
            limit: family.max_step(),
        });
    }
    Ok(())
}

fn walk(
    family: &dyn MatrixFamily,
    grid: &TimeGrid,
    start: &ComplexMatrix,
    rng: &mut PathRng,
    mut visit: impl FnMut(&ComplexMatrix),
) -> ComplexMatrix {
    let mut g = start.clone();
    visit(&g);
    for _ in 0..grid.steps() {
        let dw = family.increment(grid.step(), rng);
        g = family.advance(&g, &dw);
        visit(&g);
    }
    g
}

/// Samples path `index` of the stream family keyed by `seed`.
pub fn sample_path(
    family: &dyn MatrixFamily,
    grid: &TimeGrid,
    seed: u64,
    index: u64,
    start: Option<&ComplexMatrix>,
) -> Result<MatrixPath> {
    check_step(family, grid)?;
    let origin = family.origin();
    let start = start.unwrap_or(&origin);
    if start.dim() != family.dim() {
        return Err(Error::InvalidArgument("start matrix has the wrong size".into()));
    }
    let mut states = Vec::with_capacity(grid.len());
    walk(family, grid, start, &mut path_rng(seed, index), |g| states.push(g.clone()));
    Ok(MatrixPath {
        grid: *grid,
        states,
        family: family.family(),
        seed,
    })
}

/// Terminal states of paths `0..paths`, computed in parallel; the result does
/// not depend on the number of worker threads.
pub fn sample_endpoints(
    family: &dyn MatrixFamily,
    grid: &TimeGrid,
    seed: u64,
    paths: usize,
    start: Option<&ComplexMatrix>,
) -> Result<Vec<ComplexMatrix>> {
    check_step(family, grid)?;
    let origin = family.origin();
    let start = start.unwrap_or(&origin);
    Ok((0..paths)
        .into_par_iter()
        .map(|i| walk(family, grid, start, &mut path_rng(seed, i as u64), |_| {}))
        .collect())
}

/// Endpoint states observed at several grid indices for each path.
pub fn sample_snapshots(
    family: &dyn MatrixFamily,
    grid: &TimeGrid,
    seed: u64,
    paths: usize,
    at: &[usize],
) -> Result<Vec<Vec<ComplexMatrix>>> {
    check_step(family, grid)?;
    if at.iter().any(|&k| k > grid.steps()) {
        return Err(Error::InvalidArgument("snapshot index beyond the grid".into()));
    }
    let origin = family.origin();
    Ok((0..paths)
        .into_par_iter()
        .map(|i| {
            let mut k = 0;
            let mut out = Vec::with_capacity(at.len());
            walk(family, grid, &origin, &mut path_rng(seed, i as u64), |g| {
                if at.contains(&k) {
                    out.push(g.clone());
                }
                k += 1;
            });
            out
        })
        .collect())
}

/// Hermitian Brownian motion started at zero.
pub fn sample_hermitian_bm(n: usize, grid: &TimeGrid, seed: u64) -> Result<MatrixPath> {
    sample_path(&HermitianFamily::new(n)?, grid, seed, 0, None)
}

/// Brownian motion on `SL_n(C)` started at the identity.
pub fn sample_slnc_bm(n: usize, grid: &TimeGrid, seed: u64) -> Result<MatrixPath> {
    sample_path(&SlFamily::new(n)?, grid, seed, 0, None)
}

/// Brownian motion on `SU(n)` started at the identity.
pub fn sample_sun_bm(n: usize, grid: &TimeGrid, seed: u64) -> Result<MatrixPath> {
    sample_path(&SuFamily::new(n)?, grid, seed, 0, None)
}

/// Brownian motion on `SU(n)` started at `start`.
pub fn sample_sun_bm_from(start: &SpecialUnitary, grid: &TimeGrid, seed: u64) -> Result<MatrixPath> {
    let family = SuFamily::new(start.matrix().dim())?;
    sample_path(&family, grid, seed, 0, Some(start.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starting_states() {
        let grid = TimeGrid::to_horizon(0.01, 1e-3).unwrap();
        let h = sample_hermitian_bm(3, &grid, 1).unwrap();
        assert_eq!(h.states[0], ComplexMatrix::zeros(3));
        assert_eq!(h.states.len(), 11);
        let s = sample_sun_bm(2, &grid, 1).unwrap();
        assert_eq!(s.states[0], ComplexMatrix::identity(2));
    }

    #[test]
    fn coarse_group_steps_are_rejected() {
        let grid = TimeGrid::uniform(0.2, 5).unwrap();
        assert!(matches!(sample_slnc_bm(2, &grid, 0), Err(Error::StepTooLarge { .. })));
        assert!(matches!(sample_sun_bm(2, &grid, 0), Err(Error::StepTooLarge { .. })));
        assert!(sample_hermitian_bm(2, &grid, 0).is_ok());
    }

    #[test]
    fn endpoints_agree_with_single_paths() {
        let grid = TimeGrid::to_horizon(0.05, 1e-3).unwrap();
        let fam = SlFamily::new(2).unwrap();
        let ends = sample_endpoints(&fam, &grid, 9, 4, None).unwrap();
        for (i, e) in ends.iter().enumerate() {
            let p = sample_path(&fam, &grid, 9, i as u64, None).unwrap();
            assert_eq!(p.last(), e);
        }
    }

    #[test]
    fn constraints_hold_along_paths() {
        let grid = TimeGrid::to_horizon(1.0, 1e-3).unwrap();
        let fam = SuFamily::new(3).unwrap();
        let p = sample_path(&fam, &grid, 2, 0, None).unwrap();
        let worst = p.states.iter().map(|g| fam.defect(g)).fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
        let fam = SlFamily::new(3).unwrap();
        let p = sample_path(&fam, &grid, 2, 0, None).unwrap();
        assert!(p.states.iter().all(|g| fam.defect(g) < 1e-6));
    }
}
