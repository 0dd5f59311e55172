use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mertens-matrices"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classes_text_and_json() {
    let text = stdout(&["classes", "--n", "16"]);
    assert!(text.contains("s = 7"));
    assert!(text.contains("reps = 1 2 3 4 5 8 16"));
    assert!(text.contains("8: 6..8"));
    assert!(text.contains("16: 9..16"));

    let json: serde_json::Value = serde_json::from_str(&stdout(&["classes", "--n", "12", "--json"])).unwrap();
    assert_eq!(json["s"], 6);
    assert_eq!(json["reps"], serde_json::json!([1, 2, 3, 4, 6, 12]));
    assert_eq!(json["classes"][4], serde_json::json!({"rep": 6, "from": 5, "to": 6}));
}

#[test]
fn mertens_values() {
    assert_eq!(stdout(&["mertens", "--k", "16"]).trim(), "-1");
    assert_eq!(stdout(&["mertens", "--k", "1"]).trim(), "1");
    let out = run(&["--memory-cap", "10", "mertens", "--k", "100"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("memory cap"));
    let out = bin().env("MERTENS_MEMORY_CAP", "50").args(["mertens", "--k", "100"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn matrix_csv_shapes() {
    let m = stdout(&["matrix", "--n", "16", "--which", "M"]);
    assert_eq!(m.lines().next().unwrap(), "-1,-2,-2,-1,-1,0,1");
    assert_eq!(m.lines().count(), 7);
    let t = stdout(&["matrix", "--n", "1", "--which", "T"]);
    assert_eq!(t, "1\n");
    let rho = stdout(&["matrix", "--n", "16", "--which", "rho-16"]);
    assert_eq!(rho.lines().last().unwrap(), "1,0,0,0,0,0,0");
    assert!(!run(&["matrix", "--n", "16", "--which", "rho-7"]).status.success());
    assert!(!run(&["matrix", "--n", "16", "--which", "X"]).status.success());
    assert!(!run(&["matrix", "--n", "0", "--which", "T"]).status.success());
}

#[test]
fn verify_reports_each_check() {
    let out = stdout(&["verify", "--n", "500"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")));
}

#[test]
fn norm_output_fields() {
    let out = stdout(&["norm", "--n", "16", "--method", "dense"]);
    assert!(out.contains("iterations = 0"));
    assert!(out.contains("converged = true"));
    let power = stdout(&["norm", "--n", "16", "--tol", "1e-12", "--seed", "7"]);
    let norm = |s: &str| -> f64 {
        s.lines().find_map(|l| l.strip_prefix("norm = ")).unwrap().parse().unwrap()
    };
    assert!((norm(&out) - norm(&power)).abs() < 1e-9);
    assert!(power.contains("w_n = "));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let p = path.to_str().unwrap();
    let out = run(&["sweep", "--from", "2", "--to", "100", "--restrict", "--out", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,s,mertens_n,norm,ratio,w,restricted_form,converged");
    let ns: Vec<u64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, vec![2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42, 49, 56, 64, 72, 81, 90, 100]);
    for l in &lines[1..] {
        assert_eq!(l.split(',').count(), 8);
    }

    let path2 = dir.path().join("t.csv");
    let out = run(&["sweep", "--from", "10", "--to", "40", "--step", "10", "--method", "dense", "--out", path2.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path2).unwrap().lines().count(), 5);

    assert!(!run(&["sweep", "--from", "1", "--to", "5", "--out", p]).status.success());
}
