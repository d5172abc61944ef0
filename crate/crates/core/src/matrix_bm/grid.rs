use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform time grid `0, h, 2h, …, steps·h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    step: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn uniform(step: f64, steps: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
        }
        Ok(Self { step, steps })
    }

    /// Grid reaching `horizon` in steps of (approximately) `step`; the step is
    /// adjusted so the last point lands exactly on `horizon`.
    pub fn to_horizon(horizon: f64, step: f64) -> Result<Self> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
        }
        let steps = (horizon / step).round().max(1.0) as usize;
        Self::uniform(horizon / steps as f64, steps)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.step
    }

    pub fn horizon(&self) -> f64 {
        self.time(self.steps)
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|k| self.time(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizon_is_hit_exactly() {
        let g = TimeGrid::to_horizon(0.5, 1e-3).unwrap();
        assert_eq!(g.steps(), 500);
        assert!((g.horizon() - 0.5).abs() < 1e-15);
        assert_eq!(g.times().next(), Some(0.0));
        assert!(TimeGrid::uniform(0.0, 3).is_err());
    }
}
