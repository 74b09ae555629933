use std::path::Path;
use std::process::{Command, Output};

fn fracstable(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracstable"))
        .args(args)
        .current_dir(dir)
        .env_remove("FRACSTABLE_WORKERS")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Rows of a CSV written by the tool: comment line, header, values.
fn read_csv(path: &Path) -> (String, Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let comment = lines.next().unwrap().to_owned();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (comment, header, rows)
}

#[test]
fn gaussian_solve_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracstable(dir.path(), &["solve", "--set", "spec=[[1,1]]", "--set", "x_max=8", "--out", "heat.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, header, rows) = read_csv(&dir.path().join("heat.csv"));
    assert_eq!(header, ["t", "x", "density"]);
    assert!(rows.len() > 1000);
    for r in rows {
        let x: f64 = r[1].parse().unwrap();
        let v: f64 = r[2].parse().unwrap();
        let exact = (-x * x / 4.0).exp() / (4.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() < 1e-6, "x={x}: {v} vs {exact}");
    }
    assert!(dir.path().join("heat.json").exists());
}

#[test]
fn negative_lambda_exits_with_validation_status() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"spec": [[-1, 0.5]]}"#).unwrap();
    let o = fracstable(dir.path(), &["solve", "--config", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("kind=validation") && err.contains("reason=lambda must be positive"), "{err}");
}

#[test]
fn telegraph_suite_passes_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracstable(dir.path(), &["verify", "--suite", "telegraph"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = String::from_utf8_lossy(&o.stdout);
    let all = out.lines().find(|l| l.starts_with("all")).expect("pass-count table");
    let counts: Vec<&str> = all.split_whitespace().collect();
    assert_eq!(counts[1], counts[2], "{out}");
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(manifest["verdict"], true);
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sample", "--set", "spec=[[1,0.5],[2,0.8]]", "--set", "n_samples=300", "--set", "times=[0.5,2]", "--seed", "7"];
    let mut csvs = Vec::new();
    for workers in ["1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_fracstable"))
            .args(args)
            .args(["--out", &format!("w{workers}.csv")])
            .current_dir(dir.path())
            .env("FRACSTABLE_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        csvs.push(std::fs::read(dir.path().join(format!("w{workers}.csv"))).unwrap());
        let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("w{workers}.json"))).unwrap()).unwrap();
        assert_eq!(m["workers"].to_string(), workers);
    }
    assert_eq!(csvs[0], csvs[1]);
}

#[test]
fn config_hash_is_embedded_in_both_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.json"), r#"{"spec": [[2, 0.7]], "radii": [0.5, 1.0], "n": 2}"#).unwrap();
    let o = fracstable(dir.path(), &["limit", "--config", "run.json", "--set", "c=1.5", "--out", "lim.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (comment, _, rows) = read_csv(&dir.path().join("lim.csv"));
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("lim.json")).unwrap()).unwrap();
    let hash = m["config_sha256"].as_str().unwrap();
    assert!(comment.ends_with(&format!("config_sha256={hash}")));
    assert_eq!(m["config"]["c"], 1.5);
    assert_eq!(m["config"]["n"], 2);
    for r in rows {
        let rel: f64 = r[3].parse().unwrap();
        assert!(rel < 1e-8, "{r:?}");
    }
}

#[test]
fn unreachable_tolerance_is_an_accuracy_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracstable(dir.path(), &["solve", "--set", "output=cf", "--set", "tol=1e-300"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("error kind=accuracy"));
}

#[test]
fn failing_suite_exits_with_verification_status() {
    let dir = tempfile::tempdir().unwrap();
    // a band this narrow rejects any Monte Carlo estimate
    let o = fracstable(dir.path(), &["verify", "--suite", "laplace", "--set", "se_band=1e-9", "--set", "n_samples=2000"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(stderr(&o).contains("kind=verification"));
    assert!(dir.path().join("verify.csv").exists());
}

#[test]
fn other_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["laplace", "inverse", "limit"] {
        let o = fracstable(dir.path(), &["verify", "--suite", suite, "--set", "n_samples=4000", "--set", "times=[0.5,1,2]"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}{}", String::from_utf8_lossy(&o.stdout), stderr(&o));
    }
}

#[test]
fn bad_invocations_are_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "--suite", "nonsense"][..],
        &["solve", "--set", "unknown_key=1"],
        &["solve", "--set", "tol=0"],
        &["telegraph", "--set", "telegraph.k=4"],
        &["bogus"],
    ] {
        let o = fracstable(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn telegraph_k3_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = fracstable(dir.path(), &["telegraph", "--set", "telegraph.k=3", "--set", "telegraph.nu=0.3", "--set", "times=[0.5,1]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, header, rows) = read_csv(&dir.path().join("telegraph.csv"));
    assert_eq!(header, ["xi", "t", "closed_form", "inversion", "abs_diff"]);
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[4].parse::<f64>().unwrap() < 1e-5));
}
