use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use aztec_airy::{laplace_functional_airy, LineGrid, NystromOptions, TestFunction};
use aztec_boundary::{build_lines, embed_intervals, finite_fredholm, mc_laplace, FiniteKernel, KernelChoice, SamplerKind, ScalingFrame, FINITE_CAP};
use aztec_gas::{ekl_window, gas_correlation_window};
use aztec_lattice::{classify_dimer, record, render, Diamond, DimerConfig, ModelParams};
use aztec_sampler::{sample_many, ExactSampler, Shuffler};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{CommandConfig, ImageFormat, RunConfig, SamplerName, TableFormat, Tolerances};
use crate::verify::{run_checks, suite_ids, RunManifest, VerifyOptions};
use crate::CliError;

pub const CACHE_ENV: &str = "AZTEC_AIRY_CACHE";

/// Everything a command produces. Nothing touches the file system until the
/// whole computation has succeeded.
#[derive(Debug, Default)]
pub struct Outcome {
    /// Files relative to nothing: absolute or relative to the working directory.
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub stdout: Vec<u8>,
    /// Lines for stderr.
    pub notes: Vec<String>,
    pub exit: i32,
}

impl Outcome {
    fn emit(output: &Option<PathBuf>, bytes: Vec<u8>) -> Self {
        match output {
            Some(p) => Outcome { files: vec![(p.clone(), bytes)], ..Outcome::default() },
            None => Outcome { stdout: bytes, ..Outcome::default() },
        }
    }

    /// Writes every file through a temporary sibling and a rename.
    pub fn commit(&self) -> Result<(), CliError> {
        for (path, bytes) in &self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            let tmp = path.with_extension("partial");
            fs::write(&tmp, bytes)?;
            fs::rename(&tmp, path)?;
        }
        Ok(())
    }
}

pub fn nystrom(t: &Tolerances) -> NystromOptions {
    NystromOptions { order: t.nystrom_order, tol: t.nystrom, ..NystromOptions::default() }
}

fn complex_rows(w: &[Vec<f64>]) -> Vec<Vec<Complex64>> {
    w.iter().map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect()
}

fn cplx(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn pretty(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json value serialises");
    s.push('\n');
    s.into_bytes()
}

/// Runs a validated configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    match &config.command {
        CommandConfig::Sample { .. } => sample(config),
        &CommandConfig::Render { n, a, seed, format, scale } => {
            let params = ModelParams::new(n, a)?;
            let c = Shuffler::new(&params)?.sample(seed, 0);
            let d = Diamond::from_params(params);
            let bytes = match format {
                ImageFormat::Ppm => {
                    let mut buf = Vec::new();
                    render::write_ppm(&mut buf, &d, &c, &render::Palette::default(), scale)?;
                    buf
                }
                ImageFormat::Svg => render::svg(&d, &c, &render::Palette::default()).into_bytes(),
            };
            Ok(Outcome::emit(&config.output, bytes))
        }
        CommandConfig::Measure { .. } => measure(config),
        &CommandConfig::KernelsEkl { a, k, l } => {
            let values = ekl_values(a, k, l)?;
            let mut csv = String::from("k,l,value\n");
            let mut it = values.iter();
            for kk in k.0..=k.1 {
                for ll in l.0..=l.1 {
                    writeln!(csv, "{kk},{ll},{:.16e}", it.next().expect("window size")).unwrap();
                }
            }
            Ok(Outcome::emit(&config.output, csv.into_bytes()))
        }
        &CommandConfig::KernelsGas { a, e, ep, tmax } => {
            let w = gas_correlation_window(a, e, ep, tmax)?;
            let mut csv = String::from("t,re,im\n");
            for t in -(tmax as i64)..=tmax as i64 {
                let g = w.get(t);
                writeln!(csv, "{t},{:.16e},{:.16e}", g.re, g.im).unwrap();
            }
            Ok(Outcome::emit(&config.output, csv.into_bytes()))
        }
        CommandConfig::AiryLaplace { lines, intervals, weights } => {
            let psi = TestFunction::new(intervals.clone(), complex_rows(weights), TestFunction::DEFAULT_RADIUS)?;
            let grid = LineGrid::for_function(lines.clone(), &psi)?;
            let r = laplace_functional_airy(&grid, &psi, nystrom(&config.tolerances))?;
            let v = json!({
                "value": cplx(r.value),
                "log_re": r.value.re.ln(),
                "change": r.change,
                "nodes": r.nodes,
                "order": r.order,
                "warnings": psi.warnings,
            });
            let mut out = Outcome::emit(&config.output, pretty(&v));
            out.notes = psi.warnings.iter().map(|w| format!("warning: {w}")).collect();
            Ok(out)
        }
        &CommandConfig::Verify { suite, trend_samples } => {
            let start = std::time::Instant::now();
            let opts = VerifyOptions { trend_samples, nystrom: nystrom(&config.tolerances) };
            let checks = run_checks(&suite_ids(suite), &opts);
            let notes = checks.iter().map(|c| c.line()).collect();
            let exit = if checks.iter().any(|c| c.non_convergence) {
                3
            } else if checks.iter().all(|c| c.pass) {
                0
            } else {
                1
            };
            let manifest = RunManifest {
                config: config.clone(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                wall_clock_seconds: start.elapsed().as_secs_f64(),
                checks,
            };
            let mut out = Outcome::emit(&config.output, pretty(&serde_json::to_value(&manifest).expect("manifest serialises")));
            out.notes = notes;
            out.exit = exit;
            Ok(out)
        }
    }
}

fn sample(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Sample { n, a, seed, count, sampler } = config.command else { unreachable!() };
    let dir = config.output.clone().ok_or_else(|| CliError::Config("sample needs --output DIR".into()))?;
    let params = ModelParams::new(n, a)?;
    let d = Diamond::from_params(params.clone());
    let draws: Vec<DimerConfig> = match sampler {
        SamplerName::Shuffling => {
            let s = Shuffler::new(&params)?;
            sample_many(count, |i| s.sample(seed, i))
        }
        SamplerName::Exact => {
            let s = ExactSampler::new(d.clone())?;
            sample_many(count, |i| s.sample(seed, i)).into_iter().collect::<Result<_, _>>()?
        }
    };
    let mut records = Vec::new();
    let mut classes = [0u64; 8];
    for c in &draws {
        record::write(&mut records, c, a)?;
        for bi in 0..d.size() {
            classes[classify_dimer(d.black(bi), c.partner(&d, bi))? as usize] += 1;
        }
    }
    let summary = json!({
        "config": config,
        "records": "samples.aztc",
        "count": count,
        "class_counts": classes,
    });
    Ok(Outcome {
        files: vec![(dir.join("samples.aztc"), records), (dir.join("summary.json"), pretty(&summary))],
        ..Outcome::default()
    })
}

fn measure(config: &RunConfig) -> Result<Outcome, CliError> {
    let CommandConfig::Measure { m, a, copies, lines, intervals, weights, samples, seed, format } = &config.command else { unreachable!() };
    let frame = ScalingFrame::new(*m, *a, *copies)?;
    let specs = build_lines(&frame, lines)?;
    let embeds = embed_intervals(&frame, &specs, intervals)?;
    let w = complex_rows(weights);
    let psi = TestFunction::new(intervals.clone(), w.clone(), TestFunction::DEFAULT_RADIUS)?;
    let grid = LineGrid::for_function(lines.clone(), &psi)?;

    let est = mc_laplace(&frame, &specs, &embeds, &w, *samples, *seed, SamplerKind::Shuffling)?;
    let airy = laplace_functional_airy(&grid, &psi, nystrom(&config.tolerances))?;
    let finite = if frame.n() <= FINITE_CAP {
        let k = FiniteKernel::new(&frame)?;
        Some(finite_fredholm(&frame, &k, &specs, &embeds, &w, KernelChoice::Particle)?)
    } else {
        None
    };
    let warnings: Vec<String> = frame.warnings.iter().chain(&psi.warnings).cloned().collect();

    let bytes = match format {
        TableFormat::Json => pretty(&json!({
            "config": config,
            "n": frame.n(),
            "copies": frame.copies,
            "estimate": cplx(est.mean),
            "stderr": est.stderr,
            "log_estimate": est.log_mean,
            "log_stderr": est.log_stderr,
            "mu_mean": est.mu_mean,
            "airy_reference": cplx(airy.value),
            "airy_log": airy.value.re.ln(),
            "airy_change": airy.change,
            "finite_determinant": finite.map(cplx),
            "warnings": warnings,
        })),
        TableFormat::Csv => {
            let mut csv = String::from("quantity,re,im\n");
            let mut row = |name: &str, z: Complex64| writeln!(csv, "{name},{:.16e},{:.16e}", z.re, z.im).unwrap();
            row("estimate", est.mean);
            row("stderr", Complex64::new(est.stderr, 0.0));
            row("log_estimate", Complex64::new(est.log_mean, 0.0));
            row("log_stderr", Complex64::new(est.log_stderr, 0.0));
            row("airy_reference", airy.value);
            if let Some(f) = finite {
                row("finite_determinant", f);
            }
            csv.into_bytes()
        }
    };
    let mut out = Outcome::emit(&config.output, bytes);
    out.notes = warnings.iter().map(|w| format!("warning: {w}")).collect();
    Ok(out)
}

fn cache_file(dir: &Path, a: f64, k: (i64, i64), l: (i64, i64)) -> PathBuf {
    dir.join(format!("ekl-{:016x}-{}_{}-{}_{}.csv", a.to_bits(), k.0, k.1, l.0, l.1))
}

fn read_cache(path: &Path, len: usize) -> Option<Vec<f64>> {
    let text = fs::read_to_string(path).ok()?;
    let v: Vec<f64> = text.lines().map(|s| s.parse().ok()).collect::<Option<_>>()?;
    (v.len() == len).then_some(v)
}

/// `E_{k,l}` on the window, row-major in `k`. With `AZTEC_AIRY_CACHE` set,
/// windows are stored there (one value per line) and reused verbatim.
pub fn ekl_values(a: f64, k: (i64, i64), l: (i64, i64)) -> Result<Vec<f64>, CliError> {
    let len = ((k.1 - k.0 + 1) * (l.1 - l.0 + 1)) as usize;
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    if let Some(dir) = &cache {
        if let Some(v) = read_cache(&cache_file(dir, a, k, l), len) {
            return Ok(v);
        }
    }
    let table = ekl_window(a, k.0..=k.1, l.0..=l.1)?;
    if let Some(dir) = &cache {
        let body: String = table.values.iter().map(|v| format!("{v:.16e}\n")).collect();
        let out = Outcome { files: vec![(cache_file(dir, a, k, l), body.into_bytes())], ..Outcome::default() };
        out.commit()?;
    }
    Ok(table.values)
}
