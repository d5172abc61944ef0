use std::f64::consts::PI;

use spectral_lab::specfun::{
    k_zeros, macdonald_k, macdonald_k_scaled, recurrence_residuals, sturm_liouville_spectrum, zero_count_asymptotic,
    ComplexValue,
};

use crate::artifact::{Artifact, Cell, Table};
use crate::config::{ExperimentConfig, Format};
use crate::registry::{Check, ExpError, ExpResult, Experiment, Outcome, ParamSpec};

/// Parses a real number, also accepting `pi`, `2pi` and `pi/2` forms.
pub fn parse_real(key: &str, text: &str) -> ExpResult<f64> {
    let t = text.trim();
    let bad = || ExpError::Usage(format!("invalid value `{text}` for `{key}`"));
    if let Some(rest) = t.strip_suffix("pi") {
        let k = rest.trim_end_matches('*');
        let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().map_err(|_| bad())? };
        return Ok(k * PI);
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_real(key, num)?;
        let den: f64 = den.parse().map_err(|_| bad())?;
        return Ok(num / den);
    }
    t.parse().map_err(|_| bad())
}

/// Residual bounds of the K_μ engine.
pub const RECURRENCE_TOL: f64 = 1e-8;
pub const HALF_ORDER_TOL: f64 = 1e-10;
pub const ROUTE_TOL: f64 = 1e-8;

/// Fractional part of `k·α`, a low-discrepancy sequence on `[0, 1)`.
fn kronecker(k: usize, alpha: f64) -> f64 {
    (k as f64 * alpha).fract()
}

/// Recurrence, K_{1/2} closed form and scaled-vs-direct agreement on a fixed
/// 100-point sample `μ = σ + iy`, `σ ∈ [−2, 2]`, `y ∈ [0, 10]`,
/// `x ∈ [0.5, 6]`.
pub fn macdonald_engine_checks() -> ExpResult<Vec<Check>> {
    let (mut rec, mut der, mut half, mut route) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..100 {
        let sigma = -2.0 + 4.0 * kronecker(k, 0.618_033_988_749_894_9);
        let y = 10.0 * kronecker(k, 0.414_213_562_373_095);
        let x = 0.5 + 5.5 * kronecker(k, 0.732_050_807_568_877_2);
        let mu = ComplexValue::new(sigma, y);
        let (r, d) = recurrence_residuals(mu, x)?;
        rec = rec.max(r);
        der = der.max(d);

        let closed = (PI / (2.0 * x)).sqrt() * (-x).exp();
        let k_half = macdonald_k(ComplexValue::new(0.5, 0.0), x)?;
        half = half.max((k_half - closed).norm() / closed);

        // The scaled route is validated for Re μ ≤ 3.
        let a = 0.5 * x;
        let direct = macdonald_k(mu, x)?;
        let scaled = macdonald_k_scaled(mu, a)?.value();
        route = route.max((direct - scaled).norm() / direct.norm());
    }
    Ok(vec![
        Check::below("recurrence (2μ/x)K_μ = K_{μ+1} − K_{μ−1}", rec, RECURRENCE_TOL),
        Check::below("derivative −2K'_μ = K_{μ+1} + K_{μ−1}", der, RECURRENCE_TOL),
        Check::below("K_{1/2} closed form", half, HALF_ORDER_TOL),
        Check::below("scaled vs direct route, y ≤ 10", route, ROUTE_TOL),
    ])
}

pub struct BesselZeros;

impl Experiment for BesselZeros {
    fn name(&self) -> &'static str {
        "bessel-zeros"
    }

    fn about(&self) -> &'static str {
        "Zeros of y -> K_{iy}(2a) on (0, T] with counts against (T/pi) log(T/a) - T/pi"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("a", "pi", "half the argument of K (accepts pi)"),
            ParamSpec::flag("T", "60", "upper end of the scan"),
            ParamSpec::flag("checkpoints", "20,40,60", "values of T at which counts are compared"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let a = parse_real("a", cfg.raw("a")?)?;
        let t_max = parse_real("T", cfg.raw("T")?)?;
        let checkpoints: Vec<f64> = cfg.list("checkpoints")?;
        if let Some(&c) = checkpoints.iter().find(|&&c| !(c > 0.0 && c <= t_max)) {
            return Err(ExpError::Usage(format!("checkpoint {c} outside (0, T]")));
        }
        let zeros = k_zeros(a, t_max)?;
        let mut table = Table::new(&["index", "ordinate", "slope"]);
        for (i, (y, s)) in zeros.ordinates.iter().zip(&zeros.slopes).enumerate() {
            table.push(vec![Cell::from(i + 1), Cell::from(*y), Cell::from(*s)]);
        }
        let mut out = Outcome::new(Artifact::Table(table)).note(format!("{} zeros in (0, {t_max}]", zeros.count()));
        for t in checkpoints {
            let count = zeros.count_below(t);
            let asym = zero_count_asymptotic(t, a);
            out = out.check(Check::new(
                format!("count at T = {t}"),
                (count as f64 - asym).abs() <= 2.0,
                format!("{count} zeros vs asymptotic {asym:.3}"),
            ));
        }
        Ok(out)
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        macdonald_engine_checks()
    }
}

pub struct SlSpectrumCheck;

impl Experiment for SlSpectrumCheck {
    fn name(&self) -> &'static str {
        "sl-spectrum-check"
    }

    fn about(&self) -> &'static str {
        "Dirichlet eigenvalues of -d^2/dx^2 + e^{2x} on [y0, L] against squared zeros of K_{iy}(e^{y0})"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            ParamSpec::flag("y0", "0", "left end"),
            ParamSpec::flag("L", "12", "right end"),
            ParamSpec::flag("m", "4000", "interior grid points"),
            ParamSpec::flag("k", "3", "number of eigenvalues compared (at most 5)"),
        ];
        P
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }

    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome> {
        let y0: f64 = cfg.get("y0")?;
        let k: usize = cfg.get("k")?;
        let eig = sturm_liouville_spectrum(y0, cfg.get("L")?, cfg.get("m")?)?;
        if k == 0 || k > eig.len() {
            return Err(ExpError::Usage(format!("k must be in 1..={}", eig.len())));
        }
        let a = 0.5 * y0.exp();
        let reach = eig[k - 1].sqrt() * 1.5 + 5.0;
        let zeros = k_zeros(a, reach)?;
        if zeros.count() < k {
            return Err(ExpError::Usage(format!("only {} zeros below {reach:.2}", zeros.count())));
        }
        let mut table = Table::new(&["index", "eigenvalue", "zero", "zero_squared", "rel_diff"]);
        let mut worst = 0.0f64;
        for i in 0..k {
            let z = zeros.ordinates[i];
            let rel = (eig[i] - z * z).abs() / (z * z);
            worst = worst.max(rel);
            table.push(vec![Cell::from(i + 1), Cell::from(eig[i]), Cell::from(z), Cell::from(z * z), Cell::from(rel)]);
        }
        Ok(Outcome::new(Artifact::Table(table)).check(Check::below(
            format!("{k} lowest eigenvalues vs squared zeros (relative)"),
            worst,
            0.01,
        )))
    }

    fn selftest(&self) -> ExpResult<Vec<Check>> {
        let eig = sturm_liouville_spectrum(0.0, 12.0, 2000)?;
        let increasing = eig.windows(2).all(|w| w[0] < w[1]) && eig[0] > 0.0;
        Ok(vec![Check::new("spectrum positive and increasing", increasing, format!("{eig:?}"))])
    }
}
