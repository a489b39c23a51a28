//! Command-line front end: run configurations, artifact writing and the
//! acceptance checks behind `aztec verify`.

pub mod args;
pub mod commands;
pub mod config;
pub mod verify;

pub use config::{CommandConfig, ImageFormat, RunConfig, SamplerName, Suite, TableFormat, Tolerances};
pub use verify::{run_checks, suite_ids, CheckId, CheckResult, RunManifest, VerifyOptions};

use aztec_airy::AiryError;
use aztec_boundary::BoundaryError;
use aztec_gas::GasError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<GasError> for CliError {
    fn from(e: GasError) -> Self {
        match e {
            GasError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            GasError::NotGasPhase(_) | GasError::OffCircle(_) => CliError::Config(e.to_string()),
            GasError::Parity(..) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<AiryError> for CliError {
    fn from(e: AiryError) -> Self {
        match e {
            AiryError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            AiryError::OutOfRange(_) => CliError::Failed(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::Gas(g) => g.into(),
            BoundaryError::Airy(a) => a.into(),
            BoundaryError::Setup(_)
            | BoundaryError::LineOutside { .. }
            | BoundaryError::IntervalOutside { .. }
            | BoundaryError::TooLarge { .. } => CliError::Config(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<aztec_sampler::SamplerError> for CliError {
    fn from(e: aztec_sampler::SamplerError) -> Self {
        match e {
            aztec_sampler::SamplerError::TooLarge { .. } => CliError::Config(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<aztec_lattice::LatticeError> for CliError {
    fn from(e: aztec_lattice::LatticeError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<aztec_kasteleyn::KastError> for CliError {
    fn from(e: aztec_kasteleyn::KastError) -> Self {
        CliError::Failed(e.to_string())
    }
}
