use proptest::prelude::*;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holomap")).args(args).env_remove("HOLOMAP_THREADS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn records(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(str::to_string).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("holomap-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn spectrum_starts_with_the_zero_mode() {
    let (header, rows) = records(&stdout(&["spectrum", "-K", "3", "-L", "10", "-n", "3", "-m0", "0"]));
    assert_eq!(header, ["j", "k", "d", "alpha"]);
    assert_eq!(rows.len(), 80);
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[0][3], "");
    let d1: f64 = rows[1][2].parse().unwrap();
    assert!((d1 - 2.0 * std::f64::consts::PI / 80.0).abs() < 1e-6);
}

#[test]
fn numbers_carry_fifteen_significant_digits() {
    let (_, rows) = records(&stdout(&["spectrum", "-n", "2", "--m0", "0.3"]));
    let mantissa = rows[5][2].split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 15);
}

#[test]
fn verify_passes_on_the_default_lattice() {
    let out = run(&["verify", "-K", "3", "-L", "10", "-n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let (header, rows) = records(&String::from_utf8(out.stdout).unwrap());
    let status = header.iter().position(|h| h == "status").unwrap();
    assert!(rows.len() >= 15);
    assert!(rows.iter().all(|r| r[status] == "pass"), "{rows:?}");
}

#[test]
fn verify_passes_for_a_massive_k4_lattice() {
    let out = run(&["verify", "-K", "4", "-L", "14", "-n", "2", "--m0", "0.7", "--beta", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn central_charge_example() {
    let (header, rows) = records(&stdout(&["central-charge", "-K", "3", "-L", "10", "-n", "7", "--l1", "3", "--l2", "6"]));
    assert_eq!(header, ["l1", "l2", "central_charge"]);
    let c: f64 = rows[0][2].parse().unwrap();
    assert!((c - 0.997).abs() < 0.01, "c = {c}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["spectrum", "-K", "7"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "-L", "4"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--beta", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--m0", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["correlations", "-r", "3"]).status.code(), Some(1));
    assert_eq!(run(&["central-charge", "--policy", "none"]).status.code(), Some(2));
    assert_eq!(run(&["circuit", "--strict"]).status.code(), Some(2));
    assert_eq!(run(&["curvature-fit", "-n", "4", "-r", "4"]).status.code(), Some(1));
    assert_eq!(run(&["curvature-fit", "-n", "8", "-r", "4", "--beta", "0.05"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--config", "/nonexistent/holomap.toml"]).status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_holomap")).args(["spectrum"]).env("HOLOMAP_THREADS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = scratch("config");
    let path = dir.join("run.toml");
    std::fs::write(&path, "k = 4\nl = 14\nn = 2\nformat = \"json\"\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file: Value = serde_json::from_str(&stdout(&["--config", p, "spectrum"])).unwrap();
    assert_eq!(from_file.as_array().unwrap().len(), 56);
    let overridden = stdout(&["--config", p, "-L", "16", "--format", "csv", "spectrum"]);
    assert_eq!(records(&overridden).1.len(), 64);

    std::fs::write(&path, "kk = 4\n").unwrap();
    assert_eq!(run(&["--config", p, "spectrum"]).status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["overlaps", "-n", "2"][..], &["mutual-info", "-n", "6"], &["circuit", "--target", "bulk", "--givens"]] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn out_directory_receives_artifacts() {
    let dir = scratch("out");
    let d = dir.to_str().unwrap();
    let out = run(&["curvature-fit", "-n", "12", "-r", "6", "--out", d]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let fit: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("curvature_fit.json")).unwrap()).unwrap();
    let slope: f64 = fit["fit"]["slope"].to_string().parse().unwrap();
    assert!((slope / -12.0 - 1.0).abs() < 0.1);
    let (header, rows) = records(&std::fs::read_to_string(dir.join("curvature_samples.csv")).unwrap());
    assert_eq!(header, ["j", "mutual_information", "fitted", "geodesic_distance"]);
    assert_eq!(rows.len(), 35);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn circuit_round_trips_through_verify() {
    let dir = scratch("circuit");
    let d = dir.to_str().unwrap();
    assert!(run(&["circuit", "--target", "bulk", "--m0", "1", "--beta", "0.5", "--givens", "--out", d]).status.success());
    let file = dir.join("circuit.json");
    let program: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(program["target"], "bulk");
    assert_eq!(program["state_kind"], "thermal");

    let f = file.to_str().unwrap();
    let out = run(&["verify", "--simulate", f]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("simulate_program,") && l.ends_with(",pass,")), "{text}");

    let tampered = std::fs::read_to_string(&file).unwrap().replacen("\"m0\": 1.0000000000000000e+0", "\"m0\": 1.1000000000000000e+0", 1);
    assert_ne!(tampered, std::fs::read_to_string(&file).unwrap());
    let bad = dir.join("tampered.json");
    std::fs::write(&bad, tampered).unwrap();
    assert_eq!(run(&["verify", "--simulate", bad.to_str().unwrap()]).status.code(), Some(2));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["verify", "--simulate", bad.to_str().unwrap()]).status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn transform_summary_and_dump() {
    let (_, rows) = records(&stdout(&["transform", "-n", "4"]));
    let sparsity: f64 = rows[0][4].parse().unwrap();
    assert!((sparsity - 0.87).abs() < 0.01);
    let (header, rows) = records(&stdout(&["transform", "--dump", "-n", "2"]));
    assert_eq!(header.len(), 41);
    assert_eq!(rows.len(), 40);
    let sparse: Value = serde_json::from_str(&stdout(&["transform", "--dump", "-n", "2", "--format", "json"])).unwrap();
    assert_eq!(sparse["rows"], 40);
    assert!(!sparse["entries"].as_array().unwrap().is_empty());
}

#[test]
fn correlation_grids() {
    let (header, rows) = records(&stdout(&["correlations", "-n", "10", "-r", "3"]));
    assert_eq!(header, ["r", "j", "phi", "pi", "phi_asymptotic", "pi_asymptotic"]);
    assert_eq!(rows.len(), 21);
    let far = &rows[20];
    let ratio: f64 = far[2].parse::<f64>().unwrap() / far[4].parse::<f64>().unwrap();
    assert!((ratio - 1.0).abs() < 0.15);
    assert_eq!(rows[3][4], "");

    let (_, rows) = records(&stdout(&["correlations", "--kind", "temporal", "-n", "7", "-r", "3", "--points", "6"]));
    assert_eq!(rows.len(), 6);
    let (_, rows) = records(&stdout(&["correlations", "--kind", "boundary", "--m0", "0.5"]));
    assert_eq!(rows.len(), 41);
}

#[test]
fn entropy_and_mutual_information_tables() {
    let (_, rows) = records(&stdout(&["entropy", "--ell-max", "8"]));
    let s: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(s.windows(2).all(|w| w[1] > w[0]));
    let (_, rows) = records(&stdout(&["entropy", "--bulk", "-n", "6"]));
    assert_eq!(rows.len(), 6);
    let (_, rows) = records(&stdout(&["mutual-info", "-n", "6", "--cross"]));
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[2].parse::<f64>().unwrap() >= 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn spectrum_rows_cover_every_mode(k in 3usize..=5, extra in 0usize..4, n in 1usize..4, m0 in 0.0f64..2.0) {
        let l = 2 * (2 * k - 1) + extra;
        let (ks, ls, ns, ms) = (k.to_string(), l.to_string(), n.to_string(), m0.to_string());
        let (_, rows) = records(&stdout(&["spectrum", "-K", &ks, "-L", &ls, "-n", &ns, "--m0", &ms]));
        let v = l << n;
        prop_assert_eq!(rows.len(), v);
        let d: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
        for j in 1..v {
            prop_assert!((d[j] - d[v - j]).abs() <= 1e-13 * d[j].max(1.0));
        }
        prop_assert!((d[0] - m0).abs() < 1e-9);
    }
}
