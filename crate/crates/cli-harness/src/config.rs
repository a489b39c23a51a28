use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// A complete, self-contained description of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandConfig,
    /// Worker threads; `None` leaves the choice to rayon.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// File or directory receiving the artifacts; stdout when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Node-doubling tolerance of the Airy determinants.
    pub nystrom: f64,
    /// Gauss-Legendre order per segment at the first level.
    pub nystrom_order: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { nystrom: 1e-7, nystrom_order: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerName {
    Shuffling,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageFormat {
    Ppm,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Exact,
    Gas,
    Airy,
    Trend,
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CommandConfig {
    Sample {
        n: usize,
        a: f64,
        seed: u64,
        count: usize,
        sampler: SamplerName,
    },
    Render {
        n: usize,
        a: f64,
        seed: u64,
        format: ImageFormat,
        scale: usize,
    },
    Measure {
        m: usize,
        a: f64,
        copies: Option<usize>,
        lines: Vec<f64>,
        intervals: Vec<(f64, f64)>,
        /// `weights[p][q]`.
        weights: Vec<Vec<f64>>,
        samples: usize,
        seed: u64,
        format: TableFormat,
    },
    KernelsEkl {
        a: f64,
        k: (i64, i64),
        l: (i64, i64),
    },
    KernelsGas {
        a: f64,
        e: u8,
        ep: u8,
        tmax: usize,
    },
    AiryLaplace {
        lines: Vec<f64>,
        intervals: Vec<(f64, f64)>,
        weights: Vec<Vec<f64>>,
    },
    Verify {
        suite: Suite,
        /// Samples per size in the trend check.
        trend_samples: usize,
    },
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn check_a(a: f64, gas: bool) -> Result<(), CliError> {
    if !(a.is_finite() && a > 0.0) {
        return Err(bad(format!("a must be positive, got {a}")));
    }
    if gas && a >= 1.0 {
        return Err(bad(format!("this command needs 0 < a < 1, got {a}")));
    }
    Ok(())
}

fn check_test_function(lines: &[f64], intervals: &[(f64, f64)], weights: &[Vec<f64>]) -> Result<(), CliError> {
    if lines.is_empty() || lines.windows(2).any(|w| !(w[0] < w[1])) || lines.iter().any(|b| !b.is_finite()) {
        return Err(bad("lines must be finite and strictly increasing"));
    }
    if intervals.is_empty() || intervals.iter().any(|&(l, r)| !(l.is_finite() && r.is_finite() && l < r)) {
        return Err(bad("intervals must be finite with left < right"));
    }
    if weights.len() != intervals.len() || weights.iter().any(|row| row.len() != lines.len()) {
        return Err(bad(format!("weights need {} rows of {} values", intervals.len(), lines.len())));
    }
    if weights.iter().flatten().any(|w| !w.is_finite()) {
        return Err(bad("weights must be finite"));
    }
    let radius = aztec_airy::TestFunction::DEFAULT_RADIUS;
    if let Some(w) = weights.iter().flatten().find(|w| w.abs() > radius) {
        return Err(bad(format!("weight {w} exceeds the convergence radius {radius}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn new(command: CommandConfig) -> Self {
        RunConfig { command, threads: None, output: None, tolerances: Tolerances::default() }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let c: RunConfig = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serialises")
    }

    /// Checks everything that can be checked before any work starts.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.threads == Some(0) {
            return Err(bad("threads must be at least 1"));
        }
        if !(self.tolerances.nystrom > 0.0) || self.tolerances.nystrom_order < 2 {
            return Err(bad("Nyström tolerance must be positive and the order at least 2"));
        }
        match &self.command {
            CommandConfig::Sample { n, a, count, sampler, .. } => {
                check_a(*a, false)?;
                if *n == 0 || *count == 0 {
                    return Err(bad("n and count must be positive"));
                }
                if *sampler == SamplerName::Exact && *n > aztec_sampler::ExactSampler::CAP {
                    return Err(bad(format!("the exact sampler is limited to n <= {}", aztec_sampler::ExactSampler::CAP)));
                }
            }
            CommandConfig::Render { n, a, scale, .. } => {
                check_a(*a, false)?;
                if *n == 0 || *scale == 0 {
                    return Err(bad("n and scale must be positive"));
                }
            }
            CommandConfig::Measure { m, a, copies, lines, intervals, weights, .. } => {
                check_a(*a, true)?;
                if *m == 0 || *copies == Some(0) {
                    return Err(bad("m and copies must be positive"));
                }
                check_test_function(lines, intervals, weights)?;
            }
            CommandConfig::KernelsEkl { a, k, l } => {
                check_a(*a, true)?;
                if k.0 > k.1 || l.0 > l.1 {
                    return Err(bad("index ranges must be ordered"));
                }
            }
            CommandConfig::KernelsGas { a, e, ep, .. } => {
                check_a(*a, true)?;
                if *e > 1 || *ep > 1 {
                    return Err(bad("parities must be 0 or 1"));
                }
            }
            CommandConfig::AiryLaplace { lines, intervals, weights } => check_test_function(lines, intervals, weights)?,
            CommandConfig::Verify { trend_samples, .. } => {
                if *trend_samples < 2 {
                    return Err(bad("trend_samples must be at least 2"));
                }
            }
        }
        Ok(())
    }
}
