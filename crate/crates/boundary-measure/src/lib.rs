//! Discrete lines near the liquid-gas boundary of the two-periodic Aztec
//! diamond and the random signed measure built from height differences
//! along them.
//!
//! A line copy `(q, k)` runs parallel to the main diagonal at offset
//! `beta_m(q, k)`. Its points `z` sit at edge midpoints `(C + 1/2) e1 - beta e2`
//! with `C = rho + s - 2 tau`, and each point carries the edge
//! `(y(z), x(z))`. A covered edge is a particle; the height change over a
//! discrete interval is four times the signed particle count.

mod conjugate;
mod frame;
mod fredholm;
mod interval;
mod lines;
mod mc;
mod measure;

pub use conjugate::{
    c_exponent_sides, conjugated_kernel, decay_fit, gammas, gauge_factor, gaussian_reference, i_exponent_sides, output_factor,
    scaling_prefactor, ConjugatedKernel, DecayFit, Gammas, KernelEntry,
};
pub use frame::{int_part, LogBase, ScalingFrame};
pub use fredholm::{finite_fredholm, psi_support, FiniteKernel, KernelChoice, SupportPoint, FINITE_CAP};
pub use interval::{embed_intervals, DiscreteInterval, IntervalEmbed};
pub use lines::{build_lines, LinePoint, LineSpec};
pub use mc::{mc_laplace, McEstimate, SamplerKind};
pub use measure::{height_route, measure_from_config, particle_route, MeasureSample};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error(transparent)]
    Lattice(#[from] aztec_lattice::LatticeError),
    #[error(transparent)]
    Kasteleyn(#[from] aztec_kasteleyn::KastError),
    #[error(transparent)]
    Gas(#[from] aztec_gas::GasError),
    #[error(transparent)]
    Sampler(#[from] aztec_sampler::SamplerError),
    #[error(transparent)]
    Airy(#[from] aztec_airy::AiryError),
    #[error("invalid setup: {0}")]
    Setup(String),
    #[error("line q = {q}, copy k = {k} leaves the diamond: {reason}")]
    LineOutside { q: usize, k: usize, reason: String },
    #[error("interval p = {p} on line q = {q}, copy k = {k} has points outside the diamond")]
    IntervalOutside { p: usize, q: usize, k: usize },
    #[error("height route {height} and particle route {particle} disagree on interval p = {p}, line q = {q}, copy k = {k}")]
    RouteMismatch { p: usize, q: usize, k: usize, height: i64, particle: i64 },
    #[error("prefactor exponent {0}/2 is not an integer")]
    PrefactorParity(i64),
    #[error("size n = {n} exceeds the cap {cap} for {what}")]
    TooLarge { n: usize, cap: usize, what: &'static str },
}
