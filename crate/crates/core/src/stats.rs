//! Sample summaries and two-sample Kolmogorov–Smirnov machinery shared by
//! the statistical checks.

use crate::rng::{pairwise_sum, pairwise_sum_by};

/// Sample mean and its standard error (`sd / sqrt(n)`).
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum(xs) / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = pairwise_sum_by(xs, &|x| (x - mean) * (x - mean)) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic two-sample critical value `c(α) sqrt((n+m)/(n m))` with
/// `c(α) = sqrt(-ln(α/2) / 2)`.
pub fn ks_critical(alpha: f64, n: usize, m: usize) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub passed: bool,
}

pub fn ks_test(a: &[f64], b: &[f64], alpha: f64) -> KsOutcome {
    let statistic = ks_statistic(a, b);
    let critical = ks_critical(alpha, a.len(), b.len());
    KsOutcome {
        statistic,
        critical,
        passed: statistic < critical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_distance() {
        let a = [0.1, 0.5, 0.3, 0.9];
        assert_eq!(ks_statistic(&a, &a), 0.0);
    }

    #[test]
    fn disjoint_samples_have_unit_distance() {
        assert_eq!(ks_statistic(&[0.0, 1.0], &[2.0, 3.0, 4.0]), 1.0);
    }

    #[test]
    fn critical_value_at_one_percent() {
        let c = ks_critical(0.01, 10_000, 10_000);
        assert!((c - 1.6276 * (2e-4f64).sqrt()).abs() < 1e-5);
    }

    #[test]
    fn mean_and_stderr() {
        let (m, s) = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
