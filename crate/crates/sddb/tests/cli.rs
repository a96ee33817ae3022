use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use sddb_core::RngStream;
use tempfile::TempDir;

fn sddb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sddb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn series_file(dir: &TempDir, name: &str, values: &[f64]) -> PathBuf {
    let text: String = values.iter().map(|v| format!("{v:?}\n")).collect();
    write(dir, name, &text)
}

fn white_noise(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| 3.0 + 2.0 * rng.standard_normal()).collect()
}

fn ar1(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0);
    let mut v = vec![0.0; n];
    for t in 1..n {
        v[t] = 0.6 * v[t - 1] + rng.standard_normal();
    }
    v
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(sddb(&["--help"]).status.code(), Some(0));
    assert_eq!(sddb(&["--version"]).status.code(), Some(0));
}

#[test]
fn constant_series_exits_with_input_error() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "flat.csv", &[4.0; 50]);
    let o = sddb(&["spectrum", s(&p)]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn zero_truncation_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(100, 1));
    let o = sddb(&["spectrum", s(&p), "--estimator", "lag-window", "--trunc", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn malformed_number_reports_its_line() {
    let dir = TempDir::new().unwrap();
    let mut text: String = (0..20).map(|i| format!("{i}.5\n")).collect();
    text.insert_str(0, "value\n1.0\n2.0\nnot-a-number\n");
    let p = write(&dir, "bad.csv", &text);
    let o = sddb(&["spectrum", s(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.csv:4:"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = sddb(&["spectrum", "/nonexistent/series.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_method_is_rejected() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(100, 2));
    let o = sddb(&["bootstrap", s(&p), "--method", "jackknife"]);
    assert_eq!(o.status.code(), Some(3));
    let cfg = write(
        &dir,
        "cfg.json",
        r#"{"models":["I"],"n":64,"methods":["jackknife"],"statistics":["mean"],"studentized":true,
            "levels":[0.1],"realizations":1,"replicates":20}"#,
    );
    let o = sddb(&["coverage", "--config", s(&cfg), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("methods[0]"), "{}", stderr(&o));
}

#[test]
fn bootstrap_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(128, 3));
    let args = ["bootstrap", s(&p), "--statistic", "rho1", "--studentized", "--B", "60", "--seed", "9", "--alpha", "0.1"];
    let (a, b) = (sddb(&args), sddb(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other[8] = "10";
    assert_ne!(sddb(&other).stdout, a.stdout);
}

#[test]
fn bootstrap_csv_lists_replicates() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(80, 4));
    let o = sddb(&["bootstrap", s(&p), "--B", "25", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "replicate,value");
    assert_eq!(lines.len(), 26);
}

#[test]
fn spectrum_file_factorizes_like_the_series() {
    let dir = TempDir::new().unwrap();
    let series = series_file(&dir, "x.csv", &ar1(200, 5));
    let spec = dir.path().join("f.csv");
    let o = sddb(&["spectrum", s(&series), "--estimator", "ar", "--grid", "2048", "--precision", "full", "--out", s(&spec)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let header = fs::read_to_string(&spec).unwrap();
    assert!(header.starts_with("lambda,value\n"));

    let from_series = sddb(&["factorize", s(&series), "--estimator", "ar", "--grid", "2048", "--kmax", "15", "--precision", "full"]);
    let from_spectrum = sddb(&["factorize", s(&spec), "--kmax", "15", "--precision", "full"]);
    let parse = |o: &Output| -> Vec<Vec<f64>> {
        assert!(o.status.success(), "{}", stderr(o));
        stdout(o).lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
    };
    let (a, b) = (parse(&from_series), parse(&from_spectrum));
    assert_eq!(a.len(), 15);
    for (ra, rb) in a.iter().zip(&b) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).abs() < 1e-10, "{ra:?} vs {rb:?}");
        }
    }
}

#[test]
fn factorize_text_table_has_both_blocks() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/lake_huron.csv");
    let o = sddb(&["factorize", s(&path), "--estimator", "ar", "--format", "text"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("1.05") && text.contains("-0.27"), "{text}");
    assert!(text.contains("c_k") && text.contains("b_k"), "{text}");
}

#[test]
fn white_noise_mean_interval_matches_normal_theory() {
    let dir = TempDir::new().unwrap();
    let x = white_noise(400, 6);
    let p = series_file(&dir, "wn.csv", &x);
    let o = sddb(&["bootstrap", s(&p), "--estimator", "ar", "--B", "2000", "--seed", "3"]);
    let report = json(&o);
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let sd = (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let half = 1.959964 * sd / n.sqrt();
    let ci = &report["intervals"][0];
    let (lo, hi) = (ci["lower"].as_f64().unwrap(), ci["upper"].as_f64().unwrap());
    assert!(((hi - lo) / 2.0 / half - 1.0).abs() < 0.1, "[{lo}, {hi}] vs ±{half}");
    assert!(((lo + hi) / 2.0 - mean).abs() < 0.1 * half);
}

#[test]
fn sieve_autocorrelation_smoke() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(150, 7));
    let o = sddb(&["bootstrap", s(&p), "--method", "ars", "--statistic", "rho2", "--B", "100", "--alpha", "0.1", "--alpha", "0.05"]);
    let report = json(&o);
    assert_eq!(report["method"], "ars");
    let est = report["estimate"].as_f64().unwrap();
    let cis = report["intervals"].as_array().unwrap();
    assert_eq!(cis.len(), 2);
    for ci in cis {
        assert!(ci["lower"].as_f64().unwrap() < est && est < ci["upper"].as_f64().unwrap());
    }
    assert!(cis[1]["lower"].as_f64() <= cis[0]["lower"].as_f64());
}

#[test]
fn normal_approximation_needs_no_replicates() {
    let dir = TempDir::new().unwrap();
    let p = series_file(&dir, "x.csv", &ar1(100, 8));
    let report = json(&sddb(&["bootstrap", s(&p), "--method", "nd", "--studentized"]));
    assert_eq!(report["B"], 0);
    assert!(report["standard_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_is_seeded() {
    let a = sddb(&["simulate", "--model", "II", "--n", "64", "--seed", "5"]);
    let b = sddb(&["simulate", "--model", "II", "--n", "64", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("t,value"));
    assert_eq!(text.lines().count(), 65);
}

#[test]
fn smoke_coverage_is_fast_and_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cov.csv");
    let start = Instant::now();
    let o = sddb(&["coverage", "--preset", "smoke", "--seed", "1", "--out", s(&out)]);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(elapsed < 5.0, "{elapsed} s");
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("model,method,statistic,level,coverage,se,runtime_ms"));
    assert_eq!(lines.count(), 2 * 3);
    assert!(stdout(&o).contains("Model I"));
}

#[test]
fn coverage_requires_a_seed() {
    assert_eq!(sddb(&["coverage", "--preset", "smoke"]).status.code(), Some(3));
}
