use rayon::prelude::*;
use serde::Serialize;
use spectral_lab::chamber::{rho_iwasawa, simulate_conditioned_endpoints, KernelSpec, SimplexPoint};
use spectral_lab::linalg::{iwasawa, ComplexMatrix, HermitianTraceless, SpecialLinear, SpecialUnitary};
use spectral_lab::matrix_bm::{
    build_family, eigenangles, hermitian_eigenvalues, iwasawa_log_a, log_singular_values, path_header, path_rows,
    sample_endpoints, sample_path, Family, MatrixFamily, TimeGrid,
};
use spectral_lab::specfun::ComplexValue;
use spectral_lab::stats::{ks_test, mean_stderr, KsOutcome};

use crate::artifact::{Artifact, Cell, Table};
use crate::config::{ExperimentConfig, Format};
use crate::registry::{Check, ExpError, ExpResult, Experiment, Outcome, ParamSpec};

/// Grid reaching `t`: a single exact step for the additive Hermitian family,
/// steps of `dt` otherwise.
fn grid_for(family: &dyn MatrixFamily, t: f64, dt: f64) -> ExpResult<TimeGrid> {
    if family.family() == Family::Hermitian && t <= family.max_step() {
        return Ok(TimeGrid::uniform(t, 1)?);
    }
    Ok(TimeGrid::to_horizon(t, dt)?)
}

pub struct Simulate;

impl Experiment for Simulate {
    fn name(&self) -> &'static str {
        "simulate"
    }

    fn about(&self) -> &'static str {
        "Sample matrix Brownian paths (hermitian | sl | su)"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::positional("family", "hermitian", "hermitian, sl or su"),
            ParamSpec::flag("n", "2", "matrix size"),
            ParamSpec::flag("T", "1", "horizon"),
            ParamSpec::flag("dt", "0.001", "time step"),
            ParamSpec::flag("paths", "1", "number of paths"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let family = build_family(cfg.raw("family")?, cfg.get("n")?)?;
        let grid = TimeGrid::to_horizon(cfg.get("T")?, cfg.get("dt")?)?;
        let paths: u64 = cfg.get("paths")?;
        let sampled = (0..paths)
            .into_par_iter()
            .map(|i| sample_path(family.as_ref(), &grid, cfg.seed, i, None))
            .collect::<Result<Vec<_>, _>>()?;
        let n = family.dim();
        let header = path_header(n);
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        let mut defect: f64 = 0.0;
        for (i, p) in sampled.iter().enumerate() {
            defect = p.states.iter().map(|g| family.defect(g)).fold(defect, f64::max);
            for (id, row) in path_rows(p, i as u64) {
                let mut cells = vec![Cell::from(id)];
                cells.extend(row.into_iter().map(Cell::from));
                table.push(cells);
            }
        }
        Ok(Outcome::new(Artifact::Table(table))
            .check(Check::below("group constraint defect", defect, 1e-8))
            .note(format!("{} path(s) of {} on {} grid points", paths, family.family().name(), grid.len())))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let mut checks = Vec::new();
        for family in Family::ALL {
            for n in [2, 3] {
                let f = build_family(family.name(), n)?;
                let grid = TimeGrid::to_horizon(1.0, 0.01)?;
                let a = sample_path(f.as_ref(), &grid, 3, 0, None)?;
                let b = sample_path(f.as_ref(), &grid, 3, 0, None)?;
                let defect = a.states.iter().map(|g| f.defect(g)).fold(0.0, f64::max);
                checks.push(Check::below(format!("{} n={n} defect", family.name()), defect, 1e-8));
                checks.push(Check::new(
                    format!("{} n={n} reproducible", family.name()),
                    a.states == b.states,
                    "identical seed gives identical path",
                ));
            }
        }
        Ok(checks)
    }
}

/// KS comparison of the top gap of a radial part against the matching
/// conditioned diffusion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialReport {
    pub family: &'static str,
    pub domain: &'static str,
    pub n: usize,
    pub t: f64,
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    pub start: Vec<f64>,
    pub matrix_mean_gap: f64,
    pub sde_mean_gap: f64,
    pub sde_resampled: usize,
    pub ks: KsOutcome,
}

fn chamber_start(n: usize) -> Vec<f64> {
    (0..n).map(|i| (n as f64 - 1.0) / 2.0 - i as f64).collect()
}

/// Radial part of the matrix process against the Doob-conditioned diffusion:
/// eigenvalues vs `chamber`, log singular values vs `chamber_drift`,
/// eigenangles vs `simplex`. Both start at the same interior point.
pub fn radial_comparison(family: Family, n: usize, t: f64, dt: f64, paths: usize, seed: u64) -> ExpResult<RadialReport> {
    let fam = build_family(family.name(), n)?;
    let (spec, x0, start) = match family {
        Family::Hermitian => {
            let x0 = chamber_start(n);
            let m = ComplexMatrix::from_real_diag(&x0);
            (KernelSpec::chamber(n), x0, m)
        }
        Family::Sl => {
            let x0 = chamber_start(n);
            let m = ComplexMatrix::from_real_diag(&x0.iter().map(|v| v.exp()).collect::<Vec<_>>());
            (KernelSpec::chamber_drift(n), x0, m)
        }
        Family::Su => {
            let x0 = SimplexPoint::center(n).into_inner();
            let d: Vec<ComplexValue> = x0.iter().map(|&v| ComplexValue::from_polar(1.0, v)).collect();
            (KernelSpec::simplex(n), x0, ComplexMatrix::from_diag(&d))
        }
    };
    let grid = grid_for(fam.as_ref(), t, dt)?;
    let ends = sample_endpoints(fam.as_ref(), &grid, seed, paths, Some(&start))?;
    let radial = ends
        .into_par_iter()
        .map(|g| -> ExpResult<Vec<f64>> {
            Ok(match family {
                Family::Hermitian => hermitian_eigenvalues(&HermitianTraceless::new(g)?)?.into_inner(),
                Family::Sl => log_singular_values(&SpecialLinear::new(g)?)?.into_inner(),
                Family::Su => eigenangles(&SpecialUnitary::new(g)?)?.into_inner(),
            })
        })
        .collect::<ExpResult<Vec<_>>>()?;
    let sde_grid = TimeGrid::to_horizon(t, dt)?;
    let sde = simulate_conditioned_endpoints(&spec, &x0, &sde_grid, seed.wrapping_add(1), paths)?;
    let gap = |v: &Vec<f64>| v[0] - v[1];
    let a: Vec<f64> = radial.iter().map(gap).collect();
    let b: Vec<f64> = sde.endpoints.iter().map(gap).collect();
    Ok(RadialReport {
        family: family.name(),
        domain: spec.family.name(),
        n,
        t,
        dt,
        paths,
        seed,
        start: x0,
        matrix_mean_gap: mean_stderr(&a).0,
        sde_mean_gap: mean_stderr(&b).0,
        sde_resampled: sde.resampled,
        ks: ks_test(&a, &b, 0.01),
    })
}

pub struct DysonCheck;

impl Experiment for DysonCheck {
    fn name(&self) -> &'static str {
        "dyson-check"
    }

    fn about(&self) -> &'static str {
        "KS test: radial part of a matrix Brownian motion vs the conditioned diffusion"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("family", "hermitian", "hermitian (eigenvalues), sl (log singular values), su (eigenangles)"),
            ParamSpec::flag("n", "2", "matrix size"),
            ParamSpec::flag("t", "1", "time"),
            ParamSpec::flag("dt", "0.001", "time step"),
            ParamSpec::flag("paths", "10000", "paths per sample"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let family = Family::from_name(cfg.raw("family")?)?;
        let r = radial_comparison(family, cfg.get("n")?, cfg.get("t")?, cfg.get("dt")?, cfg.get("paths")?, cfg.seed)?;
        let check = Check::new(
            format!("KS {} vs {} (1% level)", r.family, r.domain),
            r.ks.passed,
            format!("D = {:.4}, critical {:.4}", r.ks.statistic, r.ks.critical),
        );
        Ok(Outcome::new(Artifact::report(&r)).check(check))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let r = radial_comparison(Family::Hermitian, 2, 0.5, 1e-3, 2000, 12)?;
        Ok(vec![Check::new(
            "hermitian n=2 KS at 2000 paths",
            r.ks.passed,
            format!("D = {:.4}, critical {:.4}", r.ks.statistic, r.ks.critical),
        )])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IwasawaReport {
    pub n: usize,
    pub t: f64,
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    /// `ρ t` in the Iwasawa ordering.
    pub expected: Vec<f64>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub z_scores: Vec<f64>,
    pub passed: bool,
}

/// Empirical mean of `w(t) = log a(g_t)` for `SL_n` Brownian motion.
pub fn iwasawa_drift(n: usize, t: f64, dt: f64, paths: usize, seed: u64) -> ExpResult<IwasawaReport> {
    let fam = build_family(Family::Sl.name(), n)?;
    let grid = TimeGrid::to_horizon(t, dt)?;
    let ends = sample_endpoints(fam.as_ref(), &grid, seed, paths, None)?;
    let w = ends
        .into_par_iter()
        .map(|g| Ok(iwasawa_log_a(&SpecialLinear::new(g)?)))
        .collect::<ExpResult<Vec<_>>>()?;
    let expected: Vec<f64> = rho_iwasawa(n).iter().map(|r| r * t).collect();
    let (mut mean, mut stderr, mut z_scores) = (Vec::new(), Vec::new(), Vec::new());
    for (k, e) in expected.iter().enumerate() {
        let col: Vec<f64> = w.iter().map(|v| v[k]).collect();
        let (m, se) = mean_stderr(&col);
        mean.push(m);
        stderr.push(se);
        z_scores.push((m - e) / se);
    }
    let passed = z_scores.iter().all(|z| z.abs() <= 3.0);
    Ok(IwasawaReport {
        n,
        t,
        dt,
        paths,
        seed,
        expected,
        mean,
        stderr,
        z_scores,
        passed,
    })
}

pub struct IwasawaDrift;

impl Experiment for IwasawaDrift {
    fn name(&self) -> &'static str {
        "iwasawa-drift"
    }

    fn about(&self) -> &'static str {
        "Mean of the Iwasawa coordinate w(t) of SL_n Brownian motion against rho t"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("n", "2", "matrix size"),
            ParamSpec::flag("t", "1", "time"),
            ParamSpec::flag("dt", "0.001", "time step"),
            ParamSpec::flag("paths", "10000", "number of paths"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let r = iwasawa_drift(cfg.get("n")?, cfg.get("t")?, cfg.get("dt")?, cfg.get("paths")?, cfg.seed)?;
        let worst = r.z_scores.iter().fold(0.0f64, |m, z| m.max(z.abs()));
        let check = Check::new("mean of w(t) within 3 stderr of rho t", r.passed, format!("max |z| = {worst:.2}"));
        Ok(Outcome::new(Artifact::report(&r)).check(check))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let fam = build_family(Family::Sl.name(), 3)?;
        let g = sample_path(fam.as_ref(), &TimeGrid::to_horizon(1.0, 0.01)?, 5, 0, None)?;
        let last = g.last().clone();
        let dec = iwasawa(&SpecialLinear::new(last.clone()).map_err(ExpError::Lib)?);
        let r = iwasawa_drift(2, 0.5, 1e-2, 2000, 5)?;
        Ok(vec![
            Check::below("Iwasawa reassembly", dec.reassemble().max_abs_diff(&last), 1e-10),
            Check::new("n=2 drift at 2000 paths", r.passed, format!("z = {:?}", r.z_scores)),
        ])
    }
}
