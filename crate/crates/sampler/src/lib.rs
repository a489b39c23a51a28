//! Random two-periodic Aztec diamond tilings.
//!
//! [`Shuffler`] implements generalized domino shuffling and is the workhorse
//! for large diamonds. [`ExactSampler`] draws black vertices one at a time
//! from the conditional law given by the inverse Kasteleyn matrix; it is exact
//! but cubic per sample and serves as an oracle.

mod exact;
mod rng;
mod shuffle;

pub use exact::ExactSampler;
pub use rng::stream_rng;
pub use shuffle::{sample_shuffling, CellWeights, Level, ShuffleTable, Shuffler};

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error(transparent)]
    Lattice(#[from] aztec_lattice::LatticeError),
    #[error(transparent)]
    Kasteleyn(#[from] aztec_kasteleyn::KastError),
    #[error("weights must be positive and finite; found {0} at level {1}")]
    BadWeight(f64, usize),
    #[error("conditional probability {p:.3e} out of range at black vertex {black}")]
    Probability { p: f64, black: usize },
    #[error("size n = {n} exceeds the cap {cap} for exact sampling")]
    TooLarge { n: usize, cap: usize },
}

/// Runs `f(index)` for `index in 0..count` in parallel and returns the results
/// in index order. With per-index random streams the output does not depend
/// on the thread count.
pub fn sample_many<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..count as u64).into_par_iter().map(f).collect()
}
