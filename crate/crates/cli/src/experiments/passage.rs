use serde::Serialize;
use spectral_lab::passage::{
    correspond_spectral_thorin, ggc_exponent, lambda_grid, levy_fit, mc_mellin, sample_t_x, sample_w_a, t_x_exponent,
    t_x_levy_density, t_x_mellin, thorin_t_x, thorin_w_a, w_a_exponent, w_a_levy_density, w_a_mellin,
    w_a_moment_quadrature, CorrespondenceCase, DriftedPassageLaw, GgcFit, SIGMA_VARIABLE,
};

use super::specfun::parse_real;
use crate::artifact::{Artifact, Cell, Table};
use crate::config::{ExperimentConfig, Format};
use crate::registry::{Check, ExpError, ExpResult, Experiment, Outcome, ParamSpec};

/// Residual bounds for the fitted Thorin representations.
pub const T_FIT_TOL: f64 = 1e-6;
pub const W_FIT_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Law {
    T,
    W,
}

fn parse_law(text: &str) -> ExpResult<Law> {
    match text {
        "t" | "T" => Ok(Law::T),
        "w" | "W" => Ok(Law::W),
        other => Err(ExpError::Usage(format!("unknown law `{other}` (t or w)"))),
    }
}

/// One row of a Mellin comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MellinRow {
    pub s: f64,
    pub analytic: f64,
    pub mc_value: f64,
    pub stderr: f64,
    pub z: f64,
}

/// `E[T_x^s]` against a Monte Carlo estimate from `samples` draws.
pub fn mellin_rows_t(x: f64, a: f64, s: &[f64], samples: usize, seed: u64) -> ExpResult<Vec<MellinRow>> {
    let law = DriftedPassageLaw::new(x, a)?;
    let draws = sample_t_x(samples, seed, &law)?;
    s.iter()
        .map(|&s| {
            let analytic = t_x_mellin(s, &law)?;
            let mc = mc_mellin(&draws, s)?;
            Ok(MellinRow {
                s,
                analytic,
                mc_value: mc.value,
                stderr: mc.stderr,
                z: mc.z_score(analytic),
            })
        })
        .collect()
}

/// `E[W_a^s]` against a Monte Carlo estimate.
pub fn mellin_rows_w(a: f64, s: &[f64], samples: usize, seed: u64) -> ExpResult<Vec<MellinRow>> {
    let draws = sample_w_a(samples, seed, a)?;
    s.iter()
        .map(|&s| {
            let analytic = w_a_mellin(s, a)?;
            let mc = mc_mellin(&draws, s)?;
            Ok(MellinRow {
                s,
                analytic,
                mc_value: mc.value,
                stderr: mc.stderr,
                z: mc.z_score(analytic),
            })
        })
        .collect()
}

pub struct MellinCheck;

impl Experiment for MellinCheck {
    fn name(&self) -> &'static str {
        "mellin-check"
    }

    fn about(&self) -> &'static str {
        "Mellin transforms E[T_x^s] or E[W_a^s] against Monte Carlo"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("law", "w", "t (drifted passage time) or w (doubled Bessel exit time)"),
            ParamSpec::flag("a", "1", "drift (t) or radius (w); accepts pi"),
            ParamSpec::flag("x", "1", "level of the passage time (t only)"),
            ParamSpec::flag("s", "0.5,1,2", "orders, comma-separated"),
            ParamSpec::flag("samples", "100000", "Monte Carlo sample size"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let a = parse_real("a", cfg.raw("a")?)?;
        let s: Vec<f64> = cfg.list("s")?;
        let samples: usize = cfg.get("samples")?;
        let rows = match parse_law(cfg.raw("law")?)? {
            Law::T => mellin_rows_t(parse_real("x", cfg.raw("x")?)?, a, &s, samples, cfg.seed)?,
            Law::W => mellin_rows_w(a, &s, samples, cfg.seed)?,
        };
        let mut table = Table::new(&["s", "analytic", "mc_value", "stderr", "z"]);
        let mut out = Outcome::new(Artifact::Table(Table::new(&[])));
        for r in &rows {
            table.push(vec![
                Cell::from(r.s),
                Cell::from(r.analytic),
                Cell::from(r.mc_value),
                Cell::from(r.stderr),
                Cell::from(r.z),
            ]);
            out = out.check(Check::new(
                format!("s = {}: within 3 stderr", r.s),
                r.z < 3.0,
                format!("analytic {:.6}, MC {:.6} ± {:.2e}, z = {:.2}", r.analytic, r.mc_value, r.stderr, r.z),
            ));
        }
        out.artifact = Artifact::Table(table);
        Ok(out)
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let mut worst = 0.0f64;
        for s in [0.5, 1.0, 2.0] {
            let f = w_a_mellin(s, 1.0)?;
            worst = worst.max((f - w_a_moment_quadrature(s, 1.0)).abs() / f);
        }
        let law = DriftedPassageLaw::new(1.0, 1.0)?;
        Ok(vec![
            Check::below("w_a_mellin vs density quadrature", worst, 1e-6),
            Check::below("E[T] = x/a", (t_x_mellin(1.0, &law)? - 1.0).abs(), 1e-12),
            Check::below("E[W_1] = 2/3", (w_a_mellin(1.0, 1.0)? - 2.0 / 3.0).abs(), 1e-12),
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThorinReport {
    pub law: &'static str,
    pub x: Option<f64>,
    pub a: f64,
    pub variable: &'static str,
    pub atoms: Option<usize>,
    pub multiplier: f64,
    /// Residual of the Thorin exponent against the log-Laplace exponent at
    /// `λ = 1`.
    pub residual_at_unit_lambda: f64,
    /// Largest residual over the λ-grid.
    pub grid_max_residual: f64,
    pub fit: Option<GgcFit>,
    pub levy_fit: GgcFit,
}

/// Thorin and Lévy representations of `T_x` (`law = t`) or `W_a`.
pub fn thorin_report(law: &str, x: f64, a: f64, atoms: usize) -> ExpResult<ThorinReport> {
    match parse_law(law)? {
        Law::T => {
            let l = DriftedPassageLaw::new(x, a)?;
            let (nu, fit) = thorin_t_x(&l)?;
            let unit = (ggc_exponent(0.5, &nu)? - t_x_exponent(0.5, &l)).abs();
            let levy = levy_fit(&|t| t_x_levy_density(t, &l), &|s| t_x_exponent(s, &l))?;
            Ok(ThorinReport {
                law: "t",
                x: Some(x),
                a,
                variable: nu.variable,
                atoms: None,
                multiplier: nu.multiplier,
                residual_at_unit_lambda: unit,
                grid_max_residual: fit.max_residual,
                fit: Some(fit),
                levy_fit: levy,
            })
        }
        Law::W => {
            let nu = thorin_w_a(a, atoms)?;
            let mut grid_max = 0.0f64;
            for l in lambda_grid() {
                let s = 0.5 * l * l;
                grid_max = grid_max.max((ggc_exponent(s, &nu)? - w_a_exponent(s, a)).abs());
            }
            let unit = (ggc_exponent(0.5, &nu)? - w_a_exponent(0.5, a)).abs();
            let levy = levy_fit(&|t| w_a_levy_density(t, a), &|s| w_a_exponent(s, a))?;
            Ok(ThorinReport {
                law: "w",
                x: None,
                a,
                variable: SIGMA_VARIABLE,
                atoms: Some(atoms),
                multiplier: nu.multiplier,
                residual_at_unit_lambda: unit,
                grid_max_residual: grid_max,
                fit: None,
                levy_fit: levy,
            })
        }
    }
}

pub struct ThorinReportExp;

impl Experiment for ThorinReportExp {
    fn name(&self) -> &'static str {
        "thorin-report"
    }

    fn about(&self) -> &'static str {
        "Thorin (GGC) and Levy representations of T_x or W_a with fit residuals"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("law", "t", "t or w"),
            ParamSpec::flag("x", "1", "level (t only)"),
            ParamSpec::flag("a", "1", "drift (t) or radius (w); accepts pi"),
            ParamSpec::flag("atoms", "10000", "number of Thorin atoms (w only)"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let r = thorin_report(
            cfg.raw("law")?,
            parse_real("x", cfg.raw("x")?)?,
            parse_real("a", cfg.raw("a")?)?,
            cfg.get("atoms")?,
        )?;
        let mut out = Outcome::new(Artifact::report(&r));
        out = match r.law {
            "t" => out.check(Check::below("Thorin exponent residual over the λ-grid", r.grid_max_residual, T_FIT_TOL)),
            _ => out
                .check(Check::below("Thorin exponent residual at λ = 1", r.residual_at_unit_lambda, W_FIT_TOL))
                .note(format!("grid max residual {:.3e} (harmonic tail of the truncated product)", r.grid_max_residual)),
        };
        out = out.check(Check::below("Lévy exponent residual", r.levy_fit.max_residual, T_FIT_TOL));
        Ok(out)
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let t = thorin_report("t", 1.0, 1.0, 0)?;
        let w = thorin_report("w", 0.0, 1.0, 2000)?;
        Ok(vec![
            Check::below("T fit multiplier 1/√2", (t.multiplier - std::f64::consts::FRAC_1_SQRT_2).abs(), 1e-8),
            Check::below("T fit residual", t.grid_max_residual, T_FIT_TOL),
            Check::below("W Lévy multiplier 1", (w.levy_fit.multiplier - 1.0).abs(), 1e-8),
        ])
    }
}

pub struct Correspond;

impl Experiment for Correspond {
    fn name(&self) -> &'static str {
        "correspond"
    }

    fn about(&self) -> &'static str {
        "Compare Thorin measures with the rank-one spectral measures (W_with_a_pi or T_with_a_1)"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[ParamSpec::flag("case", "W_with_a_pi", "W_with_a_pi or T_with_a_1")];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let case = CorrespondenceCase::from_name(cfg.raw("case")?)?;
        let r = correspond_spectral_thorin(case)?;
        let mut out = Outcome::new(Artifact::report(&r));
        out = match case {
            CorrespondenceCase::WWithAPi => out.check(Check::new(
                "atom locations match exactly",
                r.location_max_deviation == 0.0,
                format!("{} atoms, max deviation {:e}", r.compared, r.location_max_deviation),
            )),
            CorrespondenceCase::TWithA1 => out.check(Check::new(
                "supports match exactly",
                r.thorin_support == r.spectral_support,
                format!("{:?} vs {:?}", r.thorin_support, r.spectral_support),
            )),
        };
        Ok(out.check(Check::below(
            "ratio constant (relative spread)",
            r.ratio_max_deviation / r.ratio.abs(),
            1e-10,
        )))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let w = correspond_spectral_thorin(CorrespondenceCase::WWithAPi)?;
        let t = correspond_spectral_thorin(CorrespondenceCase::TWithA1)?;
        Ok(vec![
            Check::below("W ratio 2π", (w.ratio - 2.0 * std::f64::consts::PI).abs(), 1e-12),
            Check::new("T support edge 1/2", t.thorin_support.0 == 0.5, format!("{:?}", t.thorin_support)),
        ])
    }
}
