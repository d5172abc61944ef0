//! Per-index random streams and order-fixed reductions.
//!
//! Path `i` of an experiment seeded with `seed` always draws from ChaCha8
//! stream `i` keyed by `seed`, so a batch gives bit-identical results no
//! matter how the indices are distributed over worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type PathRng = ChaCha8Rng;

pub fn path_rng(seed: u64, index: u64) -> PathRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const LEAF: usize = 64;

/// Pairwise summation over a fixed binary split of the index range.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of `f(x)` without materializing the mapped vector.
pub fn pairwise_sum_by(xs: &[f64], f: &impl Fn(f64) -> f64) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().map(|&x| f(x)).sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_by(&xs[..mid], f) + pairwise_sum_by(&xs[mid..], f)
}
