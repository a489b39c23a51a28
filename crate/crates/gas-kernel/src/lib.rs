//! Gas-phase kernels of the two-periodic dimer model on the full plane.
//!
//! All contour integrals are trapezoid sums on circles, which converge
//! geometrically for the analytic periodic integrands involved. Grids start
//! at 64 nodes and double up to 8192.

mod correlation;
mod ekl;
mod fepseps;
mod kinv;
mod symbol;
mod twobytwo;

pub use correlation::{decay_radii, gas_correlation, gas_correlation_bruteforce, gas_correlation_window, GasWindow};
pub use ekl::{ekl_asymptotic, ekl_entry, ekl_torus_bruteforce, ekl_window, inner_coefficient, EklCache, EklTable};
pub use fepseps::{f_closed, f_eval, f_integral};
pub use kinv::{full_plane_kinv, full_plane_kinv_bruteforce, kinv_indices};
pub use symbol::{branch_points, ctilde, gas_roots, GasRoots, TorusSymbol};
pub use twobytwo::{f_omega_determinant, g_matrix, g_matrix_eigencheck, q_product, q_sum};

use thiserror::Error;

pub const MIN_NODES: usize = 64;
pub const MAX_NODES: usize = 8192;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GasError {
    #[error("gas-phase kernels need 0 < a < 1, got a = {0}")]
    NotGasPhase(f64),
    #[error("{what}: relative change {change:.3e} after {nodes} nodes")]
    NonConvergence { what: String, change: f64, nodes: usize },
    #[error("vertices ({0}, {1}) and ({2}, {3}) do not give integer E indices")]
    Parity(i64, i64, i64, i64),
    #[error("|omega| = {0} is not 1")]
    OffCircle(f64),
}

pub(crate) fn check_a(a: f64) -> Result<(), GasError> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(GasError::NotGasPhase(a))
    }
}
