use spectral_lab::chamber::{
    dirichlet_eigen_check, kernel_identities_n2, kernel_table, DomainFamily, KernelSpec, SimplexPoint,
};

use crate::artifact::{Artifact, Cell, Table};
use crate::config::{ExperimentConfig, Format};
use crate::registry::{Check, ExpError, ExpResult, Experiment, Outcome, ParamSpec};

/// Tolerance on the finite-difference eigenvalue ratio.
pub const EIGEN_TOL: f64 = 1e-4;
/// Tolerance on the n = 2 kernel identities.
pub const IDENTITY_TOL: f64 = 1e-6;

fn default_start(family: DomainFamily, n: usize) -> Vec<f64> {
    match family {
        DomainFamily::Simplex => SimplexPoint::center(n).into_inner(),
        _ => (0..n).map(|i| (n as f64 - 1.0) / 2.0 - i as f64).collect(),
    }
}

fn parse_point(key: &str, text: &str) -> ExpResult<Vec<f64>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| ExpError::Usage(format!("bad coordinate `{v}` in `{key}`: {e}")))
        })
        .collect()
}

pub struct KernelTable;

impl Experiment for KernelTable {
    fn name(&self) -> &'static str {
        "kernel-table"
    }

    fn about(&self) -> &'static str {
        "Killed and Doob-conditioned kernels p0_t(x, y), q_t(x, y) along a ray or at given points"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("family", "chamber", "chamber, chamber_drift or simplex"),
            ParamSpec::flag("n", "2", "dimension"),
            ParamSpec::flag("x", "default", "start point, comma-separated (default: interior reference point)"),
            ParamSpec::flag("t", "0.5,1", "times, comma-separated"),
            ParamSpec::flag("points", "20", "number of points y = f x along the ray through x"),
            ParamSpec::flag("ys", "none", "explicit points y, separated by ';' (overrides the ray)"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let family = DomainFamily::from_name(cfg.raw("family")?)?;
        let n: usize = cfg.get("n")?;
        let spec = KernelSpec::new(family, n);
        let x = match cfg.raw("x")? {
            "default" => default_start(family, n),
            text => parse_point("x", text)?,
        };
        let times: Vec<f64> = cfg.list("t")?;
        let ys: Vec<Vec<f64>> = match cfg.raw("ys")? {
            "none" => {
                let points: usize = cfg.get("points")?;
                let reach = match family {
                    DomainFamily::Simplex => n as f64 / (n as f64 - 1.0),
                    _ => 2.0,
                };
                (1..=points)
                    .map(|k| {
                        let f = reach * k as f64 / (points as f64 + 1.0);
                        x.iter().map(|v| v * f).collect()
                    })
                    .collect()
            }
            text => text.split(';').map(|p| parse_point("ys", p)).collect::<ExpResult<_>>()?,
        };
        let rows = kernel_table(&spec, &x, &times, &ys)?;
        let mut header = vec!["t".to_string()];
        header.extend((0..n).map(|i| format!("y_{i}")));
        header.extend(["killed".to_string(), "doob".to_string()]);
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        let mut valid = true;
        for r in &rows {
            valid &= r.killed >= 0.0 && r.doob >= 0.0 && r.doob.is_finite();
            let mut cells = vec![Cell::from(r.t)];
            cells.extend(r.y.iter().map(|&v| Cell::from(v)));
            cells.extend([Cell::from(r.killed), Cell::from(r.doob)]);
            table.push(cells);
        }
        Ok(Outcome::new(Artifact::Table(table))
            .check(Check::new("kernels finite and non-negative", valid, format!("{} rows", rows.len())))
            .note(format!("{} kernels from x = {:?}", family.name(), x)))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        DomainFamily::ALL
            .into_iter()
            .map(|f| {
                let id = kernel_identities_n2(f, 1.0)?;
                Ok(Check::below(format!("{} n=2 identities", f.name()), id.max(), IDENTITY_TOL))
            })
            .collect()
    }
}

pub struct EigenLambda;

impl Experiment for EigenLambda {
    fn name(&self) -> &'static str {
        "eigen-lambda"
    }

    fn about(&self) -> &'static str {
        "Finite-difference (1/2 Laplacian h)/h for the alcove eigenfunction against (n - n^3)/6"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[ParamSpec::flag("n", "3", "dimension (2, 3 or 4)")];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let r = dirichlet_eigen_check(cfg.get("n")?, cfg.seed)?;
        Ok(Outcome::new(Artifact::report(&r))
            .note(format!("λ = {} (claimed (n − n³)/6)", r.claimed))
            .note(format!("measured {:.10}, max residual {:.3e}", r.measured, r.residual))
            .check(Check::below("ratio equals (n − n³)/6", r.residual, EIGEN_TOL))
            .check(Check::below("ratio equals −n(n²−1)/24", r.ground_residual, EIGEN_TOL)))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        (2..=4)
            .map(|n| {
                let r = dirichlet_eigen_check(n, 1)?;
                Ok(Check::below(format!("n={n} ground eigenvalue"), r.ground_residual, EIGEN_TOL))
            })
            .collect()
    }
}
