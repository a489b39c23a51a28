use aztec_lattice::{Diamond, DimerConfig};
use aztec_sampler::{sample_many, ExactSampler, Shuffler};
use num_complex::Complex64;

use crate::{measure_from_config, BoundaryError, IntervalEmbed, LineSpec, MeasureSample, ScalingFrame};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SamplerKind {
    #[default]
    Shuffling,
    /// Sequential sampling from the inverse Kasteleyn matrix; small `n` only.
    Exact,
}

/// Monte Carlo estimate of `E exp(sum w_{p,q} mu_m({beta_q} x A_p))`.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub samples: usize,
    pub mean: Complex64,
    /// Standard error of `mean`, combining real and imaginary parts.
    pub stderr: f64,
    /// `ln Re(mean)` and its jackknife standard error; NaN unless the
    /// estimate is positive.
    pub log_mean: f64,
    pub log_stderr: f64,
    /// Sample average of `mu_m({beta_q} x A_p)`, indexed `[p][q]`.
    pub mu_mean: Vec<Vec<f64>>,
}

impl McEstimate {
    pub fn from_draws(values: &[Complex64], measures: &[MeasureSample]) -> Self {
        let n = values.len();
        let nf = n as f64;
        let mean = values.iter().sum::<Complex64>() / nf;
        let var = if n > 1 { values.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (nf - 1.0) } else { 0.0 };
        let stderr = (var / nf).sqrt();
        let (log_mean, log_stderr) = if mean.re > 0.0 && n > 1 {
            let loo: Vec<f64> = values.iter().map(|v| ((nf * mean.re - v.re) / (nf - 1.0)).ln()).collect();
            let avg = loo.iter().sum::<f64>() / nf;
            let jk = ((nf - 1.0) / nf * loo.iter().map(|x| (x - avg).powi(2)).sum::<f64>()).sqrt();
            (mean.re.ln(), jk)
        } else if mean.re > 0.0 {
            (mean.re.ln(), 0.0)
        } else {
            (f64::NAN, f64::NAN)
        };
        let mut mu_mean = Vec::new();
        if let Some(first) = measures.first() {
            mu_mean = vec![vec![0.0; first.quanta.first().map_or(0, |r| r.len())]; first.quanta.len()];
            for m in measures {
                for (p, row) in mu_mean.iter_mut().enumerate() {
                    for (q, x) in row.iter_mut().enumerate() {
                        *x += m.value(p, q) / nf;
                    }
                }
            }
        }
        McEstimate { samples: n, mean, stderr, log_mean, log_stderr, mu_mean }
    }
}

/// Draws `samples` tilings on streams `0..samples` of `seed` in parallel and
/// averages `exp(sum w mu_m)`. Both evaluation routes of the measure are
/// checked on every draw.
pub fn mc_laplace(
    frame: &ScalingFrame,
    lines: &[LineSpec],
    embeds: &[IntervalEmbed],
    weights: &[Vec<Complex64>],
    samples: usize,
    seed: u64,
    kind: SamplerKind,
) -> Result<McEstimate, BoundaryError> {
    if samples == 0 {
        return Err(BoundaryError::Setup("at least one sample is needed".into()));
    }
    let d = Diamond::from_params(frame.params.clone());
    let draw: Box<dyn Fn(u64) -> Result<DimerConfig, BoundaryError> + Sync + Send> = match kind {
        SamplerKind::Shuffling => {
            let s = Shuffler::new(&frame.params)?;
            Box::new(move |i| Ok(s.sample(seed, i)))
        }
        SamplerKind::Exact => {
            let s = ExactSampler::new(d.clone())?;
            Box::new(move |i| Ok(s.sample(seed, i)?))
        }
    };
    let draws = sample_many(samples, |i| -> Result<(Complex64, MeasureSample), BoundaryError> {
        let c = draw(i)?;
        let mu = measure_from_config(&d, &c, lines, embeds)?;
        Ok((mu.pair(weights).exp(), mu))
    });
    let mut values = Vec::with_capacity(samples);
    let mut measures = Vec::with_capacity(samples);
    for r in draws {
        let (v, m) = r?;
        values.push(v);
        measures.push(m);
    }
    Ok(McEstimate::from_draws(&values, &measures))
}
