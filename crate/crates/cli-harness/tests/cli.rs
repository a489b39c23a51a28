use std::path::Path;
use std::process::{Command, Output};

use aztec_cli::{CommandConfig, RunConfig, SamplerName, Suite, TableFormat};

fn aztec(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aztec")).args(args).current_dir(dir).env_remove("AZTEC_AIRY_CACHE").output().unwrap()
}

fn examples() -> Vec<RunConfig> {
    let mut measure = RunConfig::new(CommandConfig::Measure {
        m: 4,
        a: 0.5,
        copies: Some(2),
        lines: vec![-0.2, 0.0],
        intervals: vec![(-0.3, 0.5), (0.6, 1.5)],
        weights: vec![vec![0.1, -0.2], vec![0.3, 0.4]],
        samples: 100,
        seed: 7,
        format: TableFormat::Csv,
    });
    measure.threads = Some(2);
    measure.output = Some("out/m.csv".into());
    measure.tolerances.nystrom = 1e-9;
    vec![
        measure,
        RunConfig::new(CommandConfig::Sample { n: 6, a: 0.3, seed: u64::MAX, count: 3, sampler: SamplerName::Exact }),
        RunConfig::new(CommandConfig::KernelsEkl { a: 0.5, k: (-2, 3), l: (0, 1) }),
        RunConfig::new(CommandConfig::Verify { suite: Suite::Gas, trend_samples: 2000 }),
    ]
}

#[test]
fn configs_round_trip_losslessly() {
    for c in examples() {
        let text = c.to_json();
        let back = RunConfig::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn unknown_keys_and_missing_seeds_are_rejected() {
    let text = examples()[1].to_json();
    let extra = text.replacen("\"kind\"", "\"colour\": 1, \"kind\"", 1);
    assert!(matches!(RunConfig::from_json(&extra), Err(aztec_cli::CliError::Config(_))));
    let top = text.replacen('{', "{\"verbose\": true,", 1);
    assert!(RunConfig::from_json(&top).is_err());
    let no_seed = text.replace("\"seed\": 18446744073709551615,", "");
    assert!(RunConfig::from_json(&no_seed).is_err(), "{no_seed}");
}

#[test]
fn malformed_config_exits_two_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"command\": {\"kind\": \"sample\"").unwrap();
    let out = aztec(&["--config", "bad.json", "-o", "run"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // well-formed JSON, invalid content
    let mut c = examples()[1].clone();
    c.command = CommandConfig::Sample { n: 64, a: 0.5, seed: 1, count: 1, sampler: SamplerName::Exact };
    std::fs::write(dir.path().join("big.json"), c.to_json()).unwrap();
    let out = aztec(&["--config", "big.json", "-o", "run"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // a copy leaving the diamond is only found while building lines
    let out = aztec(&["measure", "--m", "32", "--a", "0.5", "--samples", "10", "--seed", "1", "-o", "run/m.json"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k = 4"));

    let out = aztec(&["kernels", "gas", "--a", "1.5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = aztec(&["sample", "--n", "4", "--a", "0.5", "-o", "run"], dir.path());
    assert_eq!(out.status.code(), Some(2), "seed is mandatory");
    assert!(!dir.path().join("run").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str, threads: &str| {
        let out = aztec(&["--threads", threads, "sample", "--n", "12", "--a", "0.5", "--seed", "5", "--count", "4", "-o", tag], dir.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let m = aztec(&["measure", "--m", "4", "--a", "0.5", "--M", "1", "--intervals", "[-0.5,0.5]", "--samples", "300", "--seed", "3", "--out", "csv"], dir.path());
        assert!(m.status.success(), "{}", String::from_utf8_lossy(&m.stderr));
        (std::fs::read(dir.path().join(tag).join("samples.aztc")).unwrap(), m.stdout)
    };
    let (a, ma) = run("a", "1");
    let (b, mb) = run("b", "1");
    assert_eq!(a, b);
    assert_eq!(ma, mb);
    assert!(String::from_utf8(ma).unwrap().starts_with("quantity,re,im\nestimate,"));

    let mut inp = &a[..];
    let mut count = 0;
    while !inp.is_empty() {
        let (c, a) = aztec_lattice::record::read(&mut inp).unwrap();
        assert_eq!((c.n, a), (12, 0.5));
        count += 1;
    }
    assert_eq!(count, 4);
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("a/summary.json")).unwrap()).unwrap();
    let total: u64 = summary["class_counts"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 4 * 12 * 13);
}

#[test]
fn kernel_csv_is_full_precision_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_aztec"))
            .args(["kernels", "ekl", "--a", "0.5", "--k", "-2:2", "--l", "0:1"])
            .env("AZTEC_AIRY_CACHE", &cache)
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    assert_eq!(go().stdout, first.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("0,0,")).unwrap();
    let v: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((v - aztec_gas::ekl_entry(0.5, 0, 0).unwrap()).abs() < 1e-13);
    assert_eq!(text.lines().count(), 1 + 5 * 2);

    let gas = aztec(&["kernels", "gas", "--a", "0.5", "--tmax", "3"], dir.path());
    assert_eq!(String::from_utf8(gas.stdout).unwrap().lines().count(), 1 + 7);
}

#[test]
fn render_writes_an_image() {
    let dir = tempfile::tempdir().unwrap();
    let out = aztec(&["render", "--n", "8", "--a", "0.5", "--seed", "1", "--scale", "3", "-o", "t.ppm"], dir.path());
    assert!(out.status.success());
    let bytes = std::fs::read(dir.path().join("t.ppm")).unwrap();
    assert!(bytes.starts_with(b"P6\n"));
    let svg = aztec(&["render", "--n", "8", "--a", "0.5", "--seed", "1", "--format", "svg"], dir.path());
    assert!(String::from_utf8(svg.stdout).unwrap().contains("<svg"));
}

#[test]
fn airy_laplace_reports_the_determinant() {
    let out = aztec(&["airy", "laplace", "--lines", "0", "--intervals", "[-1,1]", "--weights", "0"], Path::new("."));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"]["re"].as_f64(), Some(1.0));
}
