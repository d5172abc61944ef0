use serde::Serialize;

use super::domain::{doob_unchecked, KernelSpec};
use crate::Result;

/// One row of an exported kernel table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelRow {
    pub t: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub killed: f64,
    pub doob: f64,
}

/// Evaluates both kernels at every `(t, y)` for a fixed start `x`. Points
/// outside the domain are skipped.
pub fn kernel_table(spec: &KernelSpec, x: &[f64], times: &[f64], ys: &[Vec<f64>]) -> Result<Vec<KernelRow>> {
    let domain = spec.domain()?;
    // Validates x and the times once.
    if let (Some(&t), Some(y)) = (times.first(), ys.iter().find(|y| domain.is_interior(y))) {
        super::killed_kernel(spec, t, x, y)?;
    }
    let mut rows = Vec::new();
    for &t in times {
        for y in ys.iter().filter(|y| y.len() == x.len() && domain.is_interior(y)) {
            let killed = domain.killed(t, x, y).max(0.0);
            rows.push(KernelRow {
                t,
                x: x.to_vec(),
                y: y.clone(),
                killed,
                doob: doob_unchecked(domain.as_ref(), t, x, y),
            });
        }
    }
    Ok(rows)
}
