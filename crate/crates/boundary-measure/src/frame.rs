use aztec_lattice::{AsymptoticConstants, ModelParams};

use crate::BoundaryError;

/// The integer part used for every bracket in the scaling: floor.
pub fn int_part(x: f64) -> i64 {
    x.floor() as i64
}

/// Base of the logarithm in the copy spacing `k lambda2 (log m)^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

/// Size parameter `m = n / 4`, the number of copies and the derived offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFrame {
    pub params: ModelParams,
    pub consts: AsymptoticConstants,
    pub m: usize,
    pub copies: usize,
    pub log_base: LogBase,
    /// `rho_m = 4 [m (1 + xi)]`.
    pub rho: i64,
    pub warnings: Vec<String>,
}

impl ScalingFrame {
    /// `copies = None` selects `max(1, ceil(log m))`.
    pub fn new(m: usize, a: f64, copies: Option<usize>) -> Result<Self, BoundaryError> {
        Self::with_log(m, a, copies, LogBase::Natural)
    }

    pub fn with_log(m: usize, a: f64, copies: Option<usize>, log_base: LogBase) -> Result<Self, BoundaryError> {
        if m == 0 {
            return Err(BoundaryError::Setup("m must be at least 1".into()));
        }
        let params = ModelParams::new(4 * m, a)?;
        let consts = params.asymptotic()?;
        let log_m = log_base.log(m as f64);
        let copies = copies.unwrap_or_else(|| (log_m.ceil() as usize).max(1));
        if copies == 0 {
            return Err(BoundaryError::Setup("at least one copy is needed".into()));
        }
        let rho = 4 * int_part(m as f64 * (1.0 + consts.xi));
        let mut warnings = Vec::new();
        let ratio = copies as f64 * log_m * log_m / (m as f64).cbrt();
        if ratio > 0.5 {
            warnings.push(format!("M (log m)^2 / m^(1/3) = {ratio:.3} is above 0.5; copies may reach the gas region"));
        }
        Ok(ScalingFrame { params, consts, m, copies, log_base, rho, warnings })
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn a(&self) -> f64 {
        self.params.a
    }

    pub fn log_m(&self) -> f64 {
        self.log_base.log(self.m as f64)
    }

    /// `lambda1 (2m)^(1/3)`, the unit of the boundary coordinate.
    pub fn time_scale(&self) -> f64 {
        self.consts.lambda1 * (2.0 * self.m as f64).cbrt()
    }

    /// `beta_m(q, k) = 2 [beta lambda2 (2m)^(2/3) + k lambda2 (log m)^2]`.
    pub fn beta_m(&self, beta: f64, k: usize) -> i64 {
        let l2 = self.consts.lambda2;
        let lm = self.log_m();
        2 * int_part(beta * l2 * (2.0 * self.m as f64).powf(2.0 / 3.0) + k as f64 * l2 * lm * lm)
    }

    /// `tau_m(q) = [beta^2 lambda1 (2m)^(1/3)]`.
    pub fn tau(&self, beta: f64) -> i64 {
        int_part(beta * beta * self.time_scale())
    }

    /// Range `[lo, hi)` of `s` covering `[alpha_l, alpha_r]`.
    pub fn s_range(&self, alpha: (f64, f64)) -> (i64, i64) {
        let ts = self.time_scale();
        (2 * int_part(alpha.0 * ts) - 1, 2 * int_part(alpha.1 * ts) + 1)
    }
}
