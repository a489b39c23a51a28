use aztec_airy::{kernel_atilde, kernel_phi};
use aztec_gas::{full_plane_kinv, EklCache};
use num_complex::Complex64;

use crate::{BoundaryError, FiniteKernel, LinePoint, LineSpec, ScalingFrame};

/// Exponents attached to a point of a line copy:
/// `g1 = t beta / (lambda1 (2m)^(1/3)) - beta^3 / 3`, `g2 = eps + beta_m`,
/// `g3 = 2 (t - tau) + beta_m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gammas {
    pub g1: f64,
    pub g2: i64,
    pub g3: i64,
}

pub fn gammas(frame: &ScalingFrame, line: &LineSpec, z: &LinePoint) -> Gammas {
    let b = line.beta;
    Gammas {
        g1: z.t as f64 / frame.time_scale() * b - b * b * b / 3.0,
        g2: z.eps as i64 + line.beta_m,
        g3: 2 * (z.t - line.tau) + line.beta_m,
    }
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(2 + x1(z') - x2(z') + y2(z) - y1(z), 2 (g2(z') - g2(z) + 2 - 2 eps(z')))`;
/// the two entries are equal for every pair.
pub fn c_exponent_sides(z: (&LinePoint, &Gammas), zp: (&LinePoint, &Gammas)) -> (i64, i64) {
    let (z, g) = z;
    let (zp, gp) = zp;
    let lhs = 2 + zp.x.x1 - zp.x.x2 + z.y.x2 - z.y.x1;
    (lhs, 2 * (gp.g2 - g.g2 + 2 - 2 * zp.eps as i64))
}

/// `(y1(z) - x1(z'), g3(z) - g3(z') + 2 eps(z'))`. For every pair the first
/// entry equals the second minus one.
pub fn i_exponent_sides(z: (&LinePoint, &Gammas), zp: (&LinePoint, &Gammas)) -> (i64, i64) {
    let (z, g) = z;
    let (zp, gp) = zp;
    (z.y.x1 - zp.x.x1, g.g3 - gp.g3 + 2 * zp.eps as i64)
}

/// Factor taking the particle kernel (or either of its two parts) at
/// `(z, z')` to the rescaled kernel:
/// `i^{y1(z) - x1(z') + 1} e^{g1(z') - g1(z)} C^{(2 + x1' - x2' + y2 - y1)/2}`
/// divided by `lambda1 c0 a i g_{eps(z'), eps(z)}`.
pub fn scaling_prefactor(frame: &ScalingFrame, z: (&LinePoint, &Gammas), zp: (&LinePoint, &Gammas)) -> Result<Complex64, BoundaryError> {
    let k = &frame.consts;
    let (num, _) = c_exponent_sides(z, zp);
    if num.rem_euclid(2) != 0 {
        return Err(BoundaryError::PrefactorParity(num));
    }
    let (ie, _) = i_exponent_sides(z, zp);
    let g = k.g[zp.0.eps as usize][z.0.eps as usize];
    let denom = k.lambda1 * k.c0 * Complex64::new(0.0, k.a) * g;
    Ok(i_pow(ie + 1) * (zp.1.g1 - z.1.g1).exp() * k.curly_c.powi((num / 2) as i32) / denom)
}

/// `(a i / 2) sqrt(1 - 2c) g_{eps(z'), eps(z)} C^{2 eps(z') - 2} (-1)^{eps(z')}`.
pub fn output_factor(frame: &ScalingFrame, eps: u8, eps_p: u8) -> Complex64 {
    let k = &frame.consts;
    let sign = if eps_p == 0 { 1.0 } else { -1.0 };
    Complex64::new(0.0, k.a / 2.0) * k.root() * k.g[eps_p as usize][eps as usize] * k.curly_c.powi(2 * eps_p as i32 - 2) * sign
}

/// Product of [`scaling_prefactor`] and [`output_factor`]: the conjugation
/// taking the particle kernel to the gauge kernel.
pub fn gauge_factor(frame: &ScalingFrame, z: (&LinePoint, &Gammas), zp: (&LinePoint, &Gammas)) -> Result<Complex64, BoundaryError> {
    Ok(scaling_prefactor(frame, z, zp)? * output_factor(frame, z.0.eps, zp.0.eps))
}

/// Values at one pair `(z, z')`. Entries needing the finite inverse are
/// `None` without it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelEntry {
    pub t: i64,
    pub tp: i64,
    /// Part built from the full-plane inverse.
    pub k0: Complex64,
    /// Part built from the finite-size correction.
    pub k1: Option<Complex64>,
    /// `k0 - k1`.
    pub km: Option<Complex64>,
    /// Gauge kernel.
    pub gauge: Option<Complex64>,
}

/// Rescaled kernels on a set of line copies, evaluated lazily.
pub struct ConjugatedKernel<'a> {
    pub frame: &'a ScalingFrame,
    pub lines: &'a [LineSpec],
    pub finite: Option<&'a FiniteKernel>,
    cache: EklCache,
}

pub fn conjugated_kernel<'a>(
    frame: &'a ScalingFrame,
    lines: &'a [LineSpec],
    finite: Option<&'a FiniteKernel>,
) -> Result<ConjugatedKernel<'a>, BoundaryError> {
    Ok(ConjugatedKernel { frame, lines, finite, cache: EklCache::new(frame.a())? })
}

impl ConjugatedKernel<'_> {
    fn locate(&self, line: usize, s: i64) -> Result<(LinePoint, Gammas), BoundaryError> {
        let l = self
            .lines
            .get(line)
            .ok_or_else(|| BoundaryError::Setup(format!("no line copy with index {line}")))?;
        let z = *l
            .point(s)
            .ok_or_else(|| BoundaryError::Setup(format!("s = {s} is outside line q = {}, copy k = {}", l.q + 1, l.k)))?;
        Ok((z, gammas(self.frame, l, &z)))
    }

    pub fn gammas(&self, line: usize, s: i64) -> Result<Gammas, BoundaryError> {
        Ok(self.locate(line, s)?.1)
    }

    /// Kernels at `z = z_{line}(s)` and `z' = z_{line'}(s')`.
    pub fn entry(&mut self, line: usize, s: i64, line_p: usize, s_p: i64) -> Result<KernelEntry, BoundaryError> {
        let (z, g) = self.locate(line, s)?;
        let (zp, gp) = self.locate(line_p, s_p)?;
        let pre = scaling_prefactor(self.frame, (&z, &g), (&zp, &gp))?;
        let ai = Complex64::new(0.0, self.frame.a());
        let plane = full_plane_kinv(&mut self.cache, zp.x, z.y)?;
        let k0 = pre * ai * plane;
        let (k1, km, gauge) = match self.finite {
            Some(f) => {
                let exact = f.inverse(zp.x, z.y)?;
                let k1 = pre * ai * (plane - exact);
                let km = k0 - k1;
                (Some(k1), Some(km), Some(output_factor(self.frame, z.eps, zp.eps) * km))
            }
            None => (None, None, None),
        };
        Ok(KernelEntry { t: z.t, tp: zp.t, k0, k1, km, gauge })
    }

    /// `A~(beta', t'/T; beta, t/T) / T` with `T = lambda1 (2m)^(1/3)`, the
    /// limit of the finite-size part.
    pub fn airy_reference(&self, line: usize, t: i64, line_p: usize, tp: i64) -> Result<f64, BoundaryError> {
        let ts = self.frame.time_scale();
        let (b, bp) = (self.lines[line].beta, self.lines[line_p].beta);
        Ok(kernel_atilde(bp, tp as f64 / ts, b, t as f64 / ts)? / ts)
    }

    /// `phi_{beta', beta}(t'/T, t/T) / T`, the limit of the full-plane part
    /// between different lines.
    pub fn phi_reference(&self, line: usize, t: i64, line_p: usize, tp: i64) -> f64 {
        let ts = self.frame.time_scale();
        let (b, bp) = (self.lines[line].beta, self.lines[line_p].beta);
        kernel_phi(bp, tp as f64 / ts, b, t as f64 / ts) / ts
    }
}

/// `exp(-((t' - t) / (lambda1 log m))^2 / (4 dk)) / (lambda1 log m sqrt(4 pi dk))`,
/// the profile of the full-plane part between copies `dk` apart.
pub fn gaussian_reference(frame: &ScalingFrame, dk: usize, dt: i64) -> f64 {
    let w = frame.consts.lambda1 * frame.log_m();
    let dk = dk as f64;
    let x = dt as f64 / w;
    (-(x * x) / (4.0 * dk)).exp() / (w * (4.0 * std::f64::consts::PI * dk).sqrt())
}

/// Least-squares line through `(x, ln |y|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit {
    /// Minus the slope.
    pub rate: f64,
    pub intercept: f64,
    /// Largest deviation of `ln |y|` from the fitted line.
    pub max_residual: f64,
}

pub fn decay_fit(points: &[(f64, f64)]) -> Option<DecayFit> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.1 != 0.0).map(|&(x, y)| (x, y.abs().ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let intercept = my - slope * mx;
    let max_residual = pts.iter().map(|p| (p.1 - intercept - slope * p.0).abs()).fold(0.0, f64::max);
    Some(DecayFit { rate: -slope, intercept, max_residual })
}
