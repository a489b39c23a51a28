//! Airy function and the extended Airy point process.
//!
//! `Ai` is evaluated by a double-double Maclaurin series for `|x| <= 8` and by
//! the standard asymptotic expansions for `8 < |x| <= 30`. Kernels on the
//! lines are discretised by Gauss-Legendre panels and Fredholm determinants
//! are taken by the Nyström method.

mod airy;
mod fredholm;
mod grid;
mod kernel;
mod quad;
pub mod tw;

pub use airy::{airy, airy_asymptotic, airy_series, AiryEval, AIRY_RANGE, SWITCHOVER};
pub use fredholm::{gap_probability, laplace_functional_airy, LaplaceResult, NystromOptions};
pub use grid::{LineGrid, TestFunction};
pub use kernel::{airy_kernel, extended_airy, kernel_atilde, kernel_phi};
pub use quad::gauss_legendre;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AiryError {
    #[error("argument {0} outside the supported range |x| <= 30")]
    OutOfRange(f64),
    #[error("{what} did not converge: last change {change:.3e} at {nodes} nodes")]
    NonConvergence { what: String, change: f64, nodes: usize },
    #[error("invalid line grid: {0}")]
    Grid(String),
    #[error("invalid test function: {0}")]
    TestFunction(String),
    #[error("weight |w| = {modulus} exceeds the convergence radius {radius}")]
    OutsideRadius { modulus: f64, radius: f64 },
}
