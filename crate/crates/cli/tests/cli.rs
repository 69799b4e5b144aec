use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn polynorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polynorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

const ONE_PLUS_Z: &str = r#"{"type":"alg","degree":1,"coeffs":[[1,0],[1,0]]}"#;
const TWO_COS: &str = r#"{"type":"trig","degree":1,"coeffs":[[1,0],[0,0],[1,0]]}"#;

#[test]
fn norms_of_one_plus_z() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", ONE_PLUS_Z);
    let run = |extra: &[&str]| {
        let mut args = vec!["norm", f.as_str()];
        args.extend_from_slice(extra);
        let out = polynorm(&args);
        assert!(out.status.success(), "{out:?}");
        stdout(&out).trim().to_owned()
    };
    assert_eq!(run(&["--kind", "lp", "--p", "2"]), "1.414213562373095");
    assert_eq!(run(&["--kind", "lp", "--p", "1"]), "1.273239544735163");
    assert_eq!(run(&["--kind", "sup"]), "2.0");
    assert_eq!(run(&["--kind", "mahler"]), "1.0");
    assert_eq!(run(&["--kind", "wiener"]), "2.0");
}

#[test]
fn lp_without_exponent_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.json", ONE_PLUS_Z);
    assert_eq!(
        polynorm(&["norm", &f, "--kind", "lp"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "bad.json",
        r#"{"type":"alg","degree":3,"coeffs":[[1,0]]}"#,
    );
    let out = polynorm(&["norm", &f, "--kind", "sup"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let missing = polynorm(&["norm", "/nonexistent/p.json", "--kind", "sup"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn diff_methods_agree_with_direct() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t.json", TWO_COS);
    let direct = polynorm(&["diff", &f, "--at", "0.5"]);
    assert!(stdout(&direct).starts_with("0.5\t-0.958851077208406"));
    for method in ["riesz", "kernel"] {
        let out = polynorm(&["diff", &f, "--method", method, "--at", "0.5", "--at", "2"]);
        assert!(out.status.success(), "{method}: {out:?}");
        let text = stdout(&out);
        assert_eq!(text.lines().count(), 2);
        for line in text.lines() {
            let residual: f64 = line
                .split('\t')
                .find_map(|c| c.strip_prefix("residual "))
                .unwrap()
                .parse()
                .unwrap();
            assert!(residual < 1e-12, "{method}: {line}");
        }
    }
}

#[test]
fn boas_residual_within_bound() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "e.json",
        r#"{"type":"expsum","bandwidth":1.5,"terms":[[1,0,1],[0,2,-0.5],[1,-1,1.5]]}"#,
    );
    let out = polynorm(&["diff", &f, "--method", "boas", "--at", "0.3", "--at", "-4"]);
    assert!(out.status.success(), "{out:?}");
    for line in stdout(&out).lines() {
        let field = |p: &str| -> f64 {
            line.split('\t')
                .find_map(|c| c.strip_prefix(p))
                .unwrap()
                .parse()
                .unwrap()
        };
        assert!(field("residual ") <= field("bound "), "{line}");
    }
}

#[test]
fn constants_for_three() {
    let out = polynorm(&["constants", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let get = |key: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}\t")))
            .unwrap_or_else(|| panic!("{key} missing in {text}"))
            .to_owned()
    };
    // sqrt(n + 1)
    assert_eq!(get("wiener"), "2.0");
    assert_eq!(get("riesz_identity"), "1.000000000000");
    assert_eq!(get("besov_inf1"), "1.533333333333333");
    assert_eq!(get("besov_111"), "6.59375");
    let eight_n_over_pi: f64 = get("besov_111_8n_over_pi").parse().unwrap();
    assert!((eight_n_over_pi - 24.0 / std::f64::consts::PI).abs() < 1e-14);
}

fn sweep_config(dir: &TempDir) -> String {
    write(
        dir,
        "sweep.json",
        r#"{"checks":["bernstein","malik","gauss_lucas"],"degree_max":5,"trials":4}"#,
    )
}

fn run_verify(dir: &TempDir, cfg: &str, prefix: &str, extra: &[&str]) -> Output {
    let out_prefix = dir.path().join(prefix);
    let mut args = vec!["verify", cfg, "--out", out_prefix.to_str().unwrap()];
    args.extend_from_slice(extra);
    polynorm(&args)
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn verify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(&dir);
    let a = run_verify(&dir, &cfg, "a", &["--seed", "17"]);
    let b = run_verify(&dir, &cfg, "b", &["--seed", "17"]);
    let c = run_verify(&dir, &cfg, "c", &["--seed", "18"]);
    for out in [&a, &b, &c] {
        assert_eq!(out.status.code(), Some(0), "{out:?}");
    }
    let (ja, jb, jc) = (
        read(dir.path(), "a.jsonl"),
        read(dir.path(), "b.jsonl"),
        read(dir.path(), "c.jsonl"),
    );
    assert_eq!(ja, jb);
    assert_ne!(ja, jc);
    assert_eq!(read(dir.path(), "a.csv"), read(dir.path(), "b.csv"));

    let text = String::from_utf8(ja).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
        assert!(v["seed"].is_u64());
    }
    let csv = String::from_utf8(read(dir.path(), "a.csv")).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "check_id,n,p,trials,min_margin,pass_rate"
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(&dir);
    let one = Command::new(env!("CARGO_BIN_EXE_polynorm"))
        .env("POLYNORM_THREADS", "1")
        .args(["verify", &cfg, "--out"])
        .arg(dir.path().join("one"))
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_polynorm"))
        .env("POLYNORM_THREADS", "4")
        .args(["verify", &cfg, "--out"])
        .arg(dir.path().join("four"))
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(
        read(dir.path(), "one.jsonl"),
        read(dir.path(), "four.jsonl")
    );
}

#[test]
fn shrunk_bound_reports_witnesses() {
    let dir = TempDir::new().unwrap();
    let cfg = sweep_config(&dir);
    let out = run_verify(&dir, &cfg, "neg", &["--debug-shrink-bound"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    let witnesses: Vec<&str> = err.lines().filter(|l| l.starts_with("witness: ")).collect();
    assert!(!witnesses.is_empty() && witnesses.len() <= 5, "{err}");
    let v: serde_json::Value =
        serde_json::from_str(witnesses[0].trim_start_matches("witness: ")).unwrap();
    assert_eq!(v["pass"], false);
    assert!(v.get("witness_input").is_some());
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "bad.json", r#"{"trails":3}"#);
    assert_eq!(polynorm(&["verify", &cfg]).status.code(), Some(2));
}
