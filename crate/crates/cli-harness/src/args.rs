use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{CommandConfig, ImageFormat, RunConfig, SamplerName, Suite, TableFormat, Tolerances};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "aztec", version, about = "Two-periodic Aztec diamond: sampling, kernels and boundary fluctuations")]
pub struct Cli {
    /// Worker threads for the sampling and kernel pools.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run the command described by a JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// File (or directory, for `sample`) receiving the output; stdout when absent.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SamplerArg {
    Shuffling,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Ppm,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    Exact,
    Gas,
    Airy,
    Trend,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw tilings and store them as binary records plus a JSON summary.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "shuffling")]
        sampler: SamplerArg,
    },
    /// Draw one tiling and render it.
    Render {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "ppm")]
        format: FormatArg,
        #[arg(long, default_value_t = 2)]
        scale: usize,
    },
    /// Monte Carlo Laplace functional of the rescaled boundary measure.
    Measure(MeasureArgs),
    /// Full-plane gas kernels as CSV.
    #[command(subcommand)]
    Kernels(KernelCommand),
    /// Limiting Airy objects.
    #[command(subcommand)]
    Airy(AiryCommand),
    /// Run acceptance checks and emit a manifest.
    Verify {
        #[arg(long, value_enum, conflicts_with = "all")]
        suite: Option<SuiteArg>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2000)]
        trend_samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub a: f64,
    /// Number of copies per line; defaults to ceil(ln m).
    #[arg(long = "M")]
    pub copies: Option<usize>,
    /// Comma-separated line times, e.g. "0,0.5".
    #[arg(long, default_value = "0")]
    pub lines: String,
    /// Intervals such as "[-1,1]" or "[-1,0],[0.5,2]".
    #[arg(long, default_value = "[-1,1]")]
    pub intervals: String,
    /// One weight for every pair, or rows "w11,w12;w21,w22" per interval.
    #[arg(long, default_value = "0.5")]
    pub weights: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutArg,
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// E_{k,l} on a rectangular window.
    Ekl {
        #[arg(long)]
        a: f64,
        /// Range "lo:hi" (inclusive).
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
        l: String,
    },
    /// Gas correlations G_{e,e'}(t) for |t| <= tmax.
    Gas {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0)]
        e: u8,
        #[arg(long, default_value_t = 0)]
        ep: u8,
        #[arg(long, default_value_t = 40)]
        tmax: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AiryCommand {
    /// Laplace functional of the Airy line ensemble.
    Laplace {
        #[arg(long, default_value = "0")]
        lines: String,
        #[arg(long, default_value = "[-1,1]")]
        intervals: String,
        #[arg(long, default_value = "0.5")]
        weights: String,
    },
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn number(s: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| bad(format!("not a number: {s:?}")))
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(number).collect()
}

pub fn parse_intervals(s: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| bad(format!("expected '[' in {s:?}")))?;
        let close = body.find(']').ok_or_else(|| bad(format!("missing ']' in {s:?}")))?;
        let ends = parse_list(&body[..close])?;
        if ends.len() != 2 {
            return Err(bad(format!("an interval needs two ends in {s:?}")));
        }
        out.push((ends[0], ends[1]));
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if out.is_empty() {
        return Err(bad("no intervals given"));
    }
    Ok(out)
}

pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| bad(format!("expected lo:hi, got {s:?}")))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|_| bad(format!("not an integer: {x:?}")));
    Ok((p(lo)?, p(hi)?))
}

/// A single value is broadcast to every (interval, line) pair.
pub fn parse_weights(s: &str, intervals: usize, lines: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let rows: Vec<Vec<f64>> = s.split(';').map(parse_list).collect::<Result<_, _>>()?;
    if rows.len() == 1 && rows[0].len() == 1 {
        return Ok(vec![vec![rows[0][0]; lines]; intervals]);
    }
    Ok(rows)
}

impl Cli {
    /// Resolves the flags (or the configuration file) into a validated run.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut config = match (&self.config, &self.command) {
            (Some(_), Some(_)) => return Err(bad("give either --config or a subcommand, not both")),
            (None, None) => return Err(bad("no command given")),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
                RunConfig::from_json(&text)?
            }
            (None, Some(cmd)) => RunConfig { command: command_config(cmd)?, threads: None, output: None, tolerances: Tolerances::default() },
        };
        if self.threads.is_some() {
            config.threads = self.threads;
        }
        if self.output.is_some() {
            config.output = self.output.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

fn command_config(cmd: &Command) -> Result<CommandConfig, CliError> {
    Ok(match cmd {
        &Command::Sample { n, a, seed, count, sampler } => CommandConfig::Sample {
            n,
            a,
            seed,
            count,
            sampler: match sampler {
                SamplerArg::Shuffling => SamplerName::Shuffling,
                SamplerArg::Exact => SamplerName::Exact,
            },
        },
        &Command::Render { n, a, seed, format, scale } => CommandConfig::Render {
            n,
            a,
            seed,
            format: match format {
                FormatArg::Ppm => ImageFormat::Ppm,
                FormatArg::Svg => ImageFormat::Svg,
            },
            scale,
        },
        Command::Measure(m) => {
            let lines = parse_list(&m.lines)?;
            let intervals = parse_intervals(&m.intervals)?;
            let weights = parse_weights(&m.weights, intervals.len(), lines.len())?;
            CommandConfig::Measure {
                m: m.m,
                a: m.a,
                copies: m.copies,
                lines,
                intervals,
                weights,
                samples: m.samples,
                seed: m.seed,
                format: match m.out {
                    OutArg::Json => TableFormat::Json,
                    OutArg::Csv => TableFormat::Csv,
                },
            }
        }
        Command::Kernels(KernelCommand::Ekl { a, k, l }) => CommandConfig::KernelsEkl { a: *a, k: parse_range(k)?, l: parse_range(l)? },
        &Command::Kernels(KernelCommand::Gas { a, e, ep, tmax }) => CommandConfig::KernelsGas { a, e, ep, tmax },
        Command::Airy(AiryCommand::Laplace { lines, intervals, weights }) => {
            let lines = parse_list(lines)?;
            let intervals = parse_intervals(intervals)?;
            let weights = parse_weights(weights, intervals.len(), lines.len())?;
            CommandConfig::AiryLaplace { lines, intervals, weights }
        }
        &Command::Verify { suite, all, trend_samples } => CommandConfig::Verify {
            suite: match (suite, all) {
                (_, true) | (Some(SuiteArg::All), _) => Suite::All,
                (Some(SuiteArg::Exact), _) => Suite::Exact,
                (Some(SuiteArg::Gas), _) => Suite::Gas,
                (Some(SuiteArg::Airy), _) => Suite::Airy,
                (Some(SuiteArg::Trend), _) => Suite::Trend,
                (None, false) => return Err(bad("verify needs --suite or --all")),
            },
            trend_samples,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_lists() {
        assert_eq!(parse_intervals("[-1,1]").unwrap(), vec![(-1.0, 1.0)]);
        assert_eq!(parse_intervals(" [-1, 0], [0.5,2] ").unwrap(), vec![(-1.0, 0.0), (0.5, 2.0)]);
        assert!(parse_intervals("[-1,1").is_err());
        assert!(parse_intervals("[1]").is_err());
        assert!(parse_intervals("").is_err());
    }

    #[test]
    fn weights_broadcast_or_rows() {
        assert_eq!(parse_weights("0.5", 2, 3).unwrap(), vec![vec![0.5; 3]; 2]);
        assert_eq!(parse_weights("0.1,0.2;0.3,0.4", 2, 2).unwrap(), vec![vec![0.1, 0.2], vec![0.3, 0.4]]);
        assert_eq!(parse_range("-3:5").unwrap(), (-3, 5));
        assert!(parse_range("3").is_err());
    }
}
