use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enas-lab"))
        .args(args)
        .env_remove("ENAS_LAB_THREADS")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = cli(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty());
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn fitness_of_figure_genotype() {
    let v = ok_json(&[
        "fitness",
        "--problem",
        "3,2",
        "--genotype",
        &fixture("fig2b.json"),
    ]);
    assert!((v["fitness"].as_f64().unwrap() - 0.8258).abs() < 1e-4);
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["i_total"], 6);
}

#[test]
fn fitness_output_reparses() {
    let out = cli(&[
        "fitness",
        "--problem",
        "3,2",
        "--genotype",
        &fixture("fig2b.json"),
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn fitness_of_empty_genotype_is_one_over_m() {
    let v = ok_json(&[
        "fitness",
        "--problem",
        "5,2",
        "--genotype",
        &fixture("zeros_m5.json"),
    ]);
    assert!((v["fitness"].as_f64().unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn fitness_rejects_wrong_problem() {
    let out = cli(&[
        "fitness",
        "--problem",
        "4,2",
        "--genotype",
        &fixture("fig2b.json"),
    ]);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_is_io_error() {
    let out = cli(&[
        "fitness",
        "--problem",
        "3,2",
        "--genotype",
        "/definitely/not/here.json",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_flag_rejected() {
    assert_eq!(
        code(&cli(&["fitness", "--problem", "3,2", "--frobnicate"])),
        1
    );
    assert_eq!(code(&cli(&["nonsense"])), 1);
}

#[test]
fn classify_bits() {
    let v = ok_json(&["classify", "--problem", "3,2", "--bits", "11"]);
    assert_eq!(v["predicted_class"], 2);
    let h: Vec<f64> = serde_json::from_value(v["h"].clone()).unwrap();
    for (got, want) in h.iter().zip([1.4, 1.5, 0.6]) {
        assert!((got - want).abs() < 1e-12);
    }
    let v = ok_json(&["classify", "--problem", "5,2", "--bits", "0000"]);
    assert_eq!(v["predicted_class"], 5);
}

#[test]
fn classify_point_with_genotype_and_assignment() {
    for source in [
        ["--genotype", "fig2b.json"],
        ["--assignment", "fig2b_assignment.json"],
    ] {
        let v = ok_json(&[
            "classify",
            "--problem",
            "3,2",
            source[0],
            &fixture(source[1]),
            "--point",
            "0.5,0.5",
        ]);
        assert_eq!(v["predicted_class"], 2);
        let p: Vec<f64> = serde_json::from_value(v["P"].clone()).unwrap();
        for (got, want) in p.iter().zip([0.25, 0.45, 0.30]) {
            assert!((got - want).abs() < 0.005, "{p:?}");
        }
    }
}

#[test]
fn classify_validation() {
    assert_eq!(
        code(&cli(&["classify", "--problem", "3,2", "--bits", "1"])),
        1
    );
    assert_eq!(
        code(&cli(&["classify", "--problem", "3,2", "--bits", "1x"])),
        1
    );
    let far = cli(&[
        "classify",
        "--problem",
        "3,2",
        "--genotype",
        &fixture("fig2b.json"),
        "--point",
        "2,0",
    ]);
    assert_eq!(code(&far), 1);
}

#[test]
fn oracle_reports() {
    let out = cli(&["oracle", "--M", "3", "--r", "2", "--max-count", "0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS: 1 genotypes"), "{text}");

    let out = cli(&["oracle", "--M", "3", "--r", "2", "--max-count", "3"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("PASS: 4096 genotypes"));

    let out = cli(&["oracle", "--M", "6", "--r", "10"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stderr).unwrap().contains("too large"));
}

#[test]
fn run_rejects_crossover_without_population() {
    let out = cli(&[
        "run",
        "--M-list",
        "3",
        "--r-list",
        "2",
        "--outer",
        "onebit",
        "--inner",
        "local",
        "--crossover",
        "onepoint",
        "--lambda",
        "1",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn run_writes_per_run_csv_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("runs{threads}.csv"));
        let out = cli(&[
            "run",
            "--M-list",
            "3:4",
            "--r-list",
            "2",
            "--outer",
            "bitwise",
            "--inner",
            "global",
            "--runs",
            "5",
            "--seed",
            "11",
            "--threads",
            threads,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stderr.is_empty() && out.stdout.is_empty());
        texts.push(std::fs::read_to_string(path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let lines: Vec<_> = texts[0].lines().collect();
    assert_eq!(
        lines[0],
        "run_index,seed,generations,evaluations,success,final_fitness"
    );
    assert_eq!(lines.len(), 11);
    assert!(lines[10].starts_with("9,"));
}

#[test]
fn sweep_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("summary.csv");
    let out = cli(&[
        "sweep",
        "--M-list",
        "2:8:2",
        "--r-list",
        "2",
        "--outer",
        "onebit",
        "--inner",
        "local",
        "--runs",
        "20",
        "--seed",
        "42",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("onebit,local,1,none,2,2,2,20,"));

    let v = ok_json(&["fit", "--in", path.to_str().unwrap()]);
    assert_eq!(v["points"], 4);
    assert!(v["coefficient"].as_f64().unwrap() > 0.0);
    assert!(v["r_squared"].as_f64().unwrap() <= 1.0);
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"M":[3],"r":[2],"evolution":{"mutation":{"outer":"onebit","inner":"global"},"lambda":2,"crossover":"uniform"},"runs":4,"master_seed":3}"#,
    )
    .unwrap();
    let out = cli(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .nth(1)
            .unwrap()
            .starts_with("onebit,global,2,uniform,3,2,2,4,"),
        "{text}"
    );
}

#[test]
fn fit_needs_three_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("summary.csv");
    let out = cli(&[
        "sweep",
        "--M-list",
        "2",
        "--r-list",
        "2",
        "--outer",
        "onebit",
        "--inner",
        "local",
        "--runs",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(code(&cli(&["fit", "--in", path.to_str().unwrap()])), 1);
    assert_eq!(code(&cli(&["fit", "--in", "/no/such/summary.csv"])), 2);
}
