use spectral_lab::xi::{
    count_zeros, tilde_xi, xi_critical_eval, xi_phi_integral, xi_product_real, xi_product_scaled, xi_real_axis,
    xi_star, xi_star_direct, ZeroTarget,
};

use crate::artifact::{Artifact, Cell, Table};
use crate::config::{ExperimentConfig, Format};
use crate::registry::{Check, ExpError, ExpResult, Experiment, Outcome, ParamSpec};

pub struct XiTable;

impl Experiment for XiTable {
    fn name(&self) -> &'static str {
        "xi-table"
    }

    fn about(&self) -> &'static str {
        "xi(1/2 + iz), xi*(z) and tilde-xi(z) on a grid of z"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("z_max", "40", "largest z (at most 120)"),
            ParamSpec::flag("step", "0.5", "grid step"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let z_max: f64 = cfg.get("z_max")?;
        let step: f64 = cfg.get("step")?;
        if !(step > 0.0) || !(z_max >= 0.0) {
            return Err(ExpError::Usage("need step > 0 and z_max ≥ 0".into()));
        }
        let count = (z_max / step + 1e-9).floor() as usize;
        let mut table = Table::new(&["z", "xi", "xi_star", "tilde_xi"]);
        for k in 0..=count {
            let z = k as f64 * step;
            table.push(vec![
                Cell::from(z),
                Cell::from(xi_critical_eval(z)?.value),
                Cell::from(xi_star(z)?),
                Cell::from(tilde_xi(z)?.value().re),
            ]);
        }
        Ok(Outcome::new(Artifact::Table(table)).note(format!("{} grid points", count + 1)))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let mut route = 0.0f64;
        for z in [0.0, 3.0, 9.5, 17.0, 25.0] {
            let (scaled, log_scale) = xi_product_scaled(z)?;
            let product = scaled * (-log_scale).exp();
            let phi = xi_phi_integral(z);
            route = route.max((phi - product).abs() / phi.abs());
        }
        let mut real = 0.0f64;
        for s in [1.5, 2.0, 3.7, 6.0] {
            let p = xi_product_real(s)?;
            real = real.max((xi_real_axis(s)? - p).abs() / p.abs());
        }
        let mut star = 0.0f64;
        for z in [0.0, 4.0, 10.0] {
            let d = xi_star_direct(z);
            star = star.max((xi_star(z)? - d).abs() / d.abs());
        }
        Ok(vec![
            Check::below("critical line: Φ integral vs Γζ product", route, 1e-6),
            Check::below("real axis: Φ integral vs Γζ product", real, 1e-6),
            Check::below("ξ* scaled K vs defining integral", star, 1e-10),
        ])
    }
}

fn parse_target(text: &str) -> ExpResult<ZeroTarget> {
    match text {
        "xi" => Ok(ZeroTarget::Xi),
        "xi_star" | "xi-star" => Ok(ZeroTarget::XiStar),
        "both" => Ok(ZeroTarget::Both),
        other => Err(ExpError::Usage(format!("unknown target `{other}` (xi, xi_star or both)"))),
    }
}

pub struct ZeroCount;

impl Experiment for ZeroCount {
    fn name(&self) -> &'static str {
        "zero-count"
    }

    fn about(&self) -> &'static str {
        "Counts zeros of xi and xi* on (0, r]"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("which", "both", "xi, xi_star or both"),
            ParamSpec::flag("r", "60", "scan bound (at most 100)"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Json
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let r: f64 = cfg.get("r")?;
        let report = count_zeros(parse_target(cfg.raw("which")?)?, r)?;
        let mut out = Outcome::new(Artifact::report(&report));
        if let Some(n) = report.n {
            out = out.check(Check::new(
                "N(r) near its asymptotic",
                (n as f64 - report.asym_n).abs() <= 2.0,
                format!("N = {n}, asymptotic {:.3}", report.asym_n),
            ));
        }
        if let Some(diff) = report.diff {
            let bound = 1.0 + r.ln();
            out = out.check(Check::new(
                "|N − N*| ≤ 1 + log r",
                (diff.abs() as f64) <= bound,
                format!("|{diff}| vs {bound:.3}"),
            ));
        }
        if report.n_star.is_some() {
            let simple = report.xi_star_slopes.iter().all(|s| s.abs() > 0.0 && s.is_finite());
            out = out.check(Check::new(
                "ξ* zeros simple",
                simple,
                format!("{} zeros with nonzero slope", report.xi_star_slopes.len()),
            ));
        }
        Ok(out)
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let small = count_zeros(ZeroTarget::Both, 30.0)?;
        let large = count_zeros(ZeroTarget::Both, 40.0)?;
        let first = small.xi_zeros.first().copied().unwrap_or(f64::NAN);
        Ok(vec![
            Check::new("N(30) = 3", small.n == Some(3), format!("N = {:?}", small.n)),
            Check::new("first ordinate 14.13", (first - 14.13).abs() <= 0.01, format!("{first:.6}")),
            Check::new(
                "counts nondecreasing",
                large.n >= small.n && large.n_star >= small.n_star,
                format!("{:?} → {:?}", (small.n, small.n_star), (large.n, large.n_star)),
            ),
        ])
    }
}
