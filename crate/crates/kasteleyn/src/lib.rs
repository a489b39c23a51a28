//! Exact finite-size machinery for the two-periodic Aztec diamond: the
//! Kasteleyn matrix, its inverse, edge correlations and brute-force oracles.

mod enumerate;
pub mod export;
mod linalg;
mod matrix;

pub use enumerate::{brute_edge_probability, brute_partition_function, enumerate_tilings, MAX_ENUMERATION_SIZE};
pub use linalg::{invert_refined, log_det, LogDet};
pub use matrix::{build_k, edge_correlation, invert_k, invert_k_relative, kasteleyn_entry, partition_function_abs, KernelMatrix, DENSE_CAP};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KastError {
    #[error(transparent)]
    Lattice(#[from] aztec_lattice::LatticeError),
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("inverse residual {0:.3e} exceeds 1e-10 after refinement")]
    Residual(f64),
    #[error("size n = {n} exceeds the cap {cap} for {what}")]
    TooLarge { n: usize, cap: usize, what: &'static str },
    #[error("vertex ({0}, {1}) is not indexed by this matrix")]
    Unindexed(i64, i64),
    #[error("probability has imaginary part {0:.3e}")]
    NotReal(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
