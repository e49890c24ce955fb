use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sicov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sicov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// y is a noisy quadratic in x.
fn dependent_csv(dir: &TempDir, n: usize) -> PathBuf {
    let mut text = String::from("x1,y1\n");
    for i in 0..n {
        let x = (i as f64 * 0.731).sin() * 2.0;
        let y = x * x + 0.3 * (i as f64 * 1.913).cos();
        text.push_str(&format!("{x},{y}\n"));
    }
    write(dir, "dep.csv", &text)
}

fn identity_csv(dir: &TempDir, n: usize) -> PathBuf {
    let mut text = String::from("x1,y1\n");
    for i in 0..n {
        let x = (i as f64 * 0.37).sin();
        text.push_str(&format!("{x},{x}\n"));
    }
    write(dir, "identity.csv", &text)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn estimate_reports_every_field() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 60);
    let o = sicov(&["estimate", "--input", p(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["sicov", "sicor", "dcor", "pearson", "alpha", "mode", "n", "p", "seed", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["n"], 60);
    assert_eq!(v["alpha"], 1.0);
    assert!(v["sicov"].as_f64().unwrap() > 0.0);
}

#[test]
fn estimate_csv_has_header_and_one_record() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 30);
    let o = sicov(&["estimate", "--input", p(&input), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("sicov,sicor"));
}

#[test]
fn dimension_mismatch_names_the_columns() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.csv", "x1,x2,y1\n1,2,3\n4,5,6\n");
    let o = sicov(&["estimate", "--input", p(&input)]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("x1, x2") && e.contains("y1"), "{e}");
}

#[test]
fn alpha_two_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 20);
    let o = sicov(&["estimate", "--input", p(&input), "--alpha", "2.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(0,2)"), "{}", stderr(&o));
}

#[test]
fn constant_column_reports_zero_sicor() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.csv", "x1,y1\n1,5\n2,5\n3,5\n4,5\n5,5\n");
    let o = sicov(&["estimate", "--input", p(&input)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sicor"], 0.0);
}

#[test]
fn test_is_deterministic_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 50);
    let args = ["test", "--input", p(&input), "--permutations", "199", "--seed", "17"];
    let (a, b) = (sicov(&args), sicov(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn identity_pairing_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = identity_csv(&dir, 100);
    let o = sicov(&["test", "--input", p(&input), "--permutations", "999"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["p_value"].as_f64().unwrap() <= 0.001);
    assert_eq!(v["reject"], true);

    let o = sicov(&["test", "--input", p(&input), "--permutations", "999", "--exit-on-reject"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn too_few_permutations() {
    let dir = TempDir::new().unwrap();
    let input = identity_csv(&dir, 20);
    let o = sicov(&["test", "--input", p(&input), "--permutations", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn test_with_interval() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 80);
    let o = sicov(&["test", "--input", p(&input), "--permutations", "99", "--ci", "--k1-budget", "500"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ci = &v["ci"];
    assert!(ci["lower"].as_f64().unwrap() <= v["statistic"].as_f64().unwrap() / 80.0);
    assert!(ci["upper"].as_f64().unwrap() >= ci["lower"].as_f64().unwrap());
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 120);
    let run = |threads: &str| {
        let o = sicov(&[
            "test", "--input", p(&input), "--mode", "u-incomplete", "--budget", "20000", "--permutations", "49",
            "--threads", threads,
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o)
    };
    assert_eq!(run("1"), run("4"));

    let sim = |threads: &str| {
        stdout(&sicov(&["simulate", "--scenario", "null-sim", "--n", "30", "--replicates", "100", "--threads", threads]))
    };
    assert_eq!(sim("1"), sim("3"));
}

#[test]
fn normal_grid_has_five_rows() {
    let o = sicov(&["simulate", "--scenario", "normal-grid", "--n", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("rho,n,sicov_closed,sicor_closed"));
}

#[test]
fn cauchy_grid_is_increasing_and_small() {
    let o = sicov(&["simulate", "--scenario", "cauchy-grid"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let values: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 9);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    assert!(values.iter().all(|&v| v > 0.0 && v < 0.04));
}

#[test]
fn null_sim_rows() {
    let o = sicov(&["simulate", "--scenario", "null-sim", "--n", "40", "--replicates", "150", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 150);
    let o = sicov(&["simulate", "--scenario", "null-sim", "--replicates", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_on_rademacher_fixture() {
    let dir = TempDir::new().unwrap();
    let fixture = write(&dir, "r.json", r#"{"atoms": [[1, 1, 0.5], [-1, -1, 0.5]]}"#);
    let o = sicov(&["oracle", "--fixture", p(&fixture)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["sicov_population"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["sicov_quadrature"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((v["sicor_population"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["lemma_quadrature"].as_f64().unwrap() - v["lemma_moment"].as_f64().unwrap()).abs() < 1e-6);
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let input = dependent_csv(&dir, 20);
    let out = dir.path().join("out.json");
    let o = sicov(&["estimate", "--input", p(&input), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["n"], 20);
}

#[test]
fn missing_input_file() {
    let o = sicov(&["estimate", "--input", "/nonexistent/data.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/data.csv"));
}
