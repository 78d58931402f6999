use std::path::Path;
use std::process::{Command, Output};

fn gk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gk")).args(args).env_remove("GK_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(dir: &Path, suite: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{suite}.json"))).unwrap()).unwrap()
}

#[test]
fn list_matches_registry() {
    let o = gk(&["list"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), gk_core::verify::registry().len());
    assert!(out.lines().any(|l| l.starts_with("a3-hyperbolic-kernel ") && l.contains("1e-8")));
    assert!(out.contains("ratio-identities"));
    assert!(out.contains("no analytic proof known"));
}

#[test]
fn run_single_suite_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let o = gk(&["run", "--suite", "a2-elliptic-kernel", "--points", "10", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out, "a2-elliptic-kernel");
    for key in
        ["suite", "params", "seed", "n_points", "max_rel_error", "threshold", "verdict", "worst_point", "samples"]
    {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["n_points"], 10);
    assert!(out.join("summary.txt").exists() && out.join("metadata.json").exists());
    assert!(stdout(&o).contains("1/1 suites passed"));
}

#[test]
fn unconstrained_flag_certifies_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = gk(&[
        "run",
        "--suite",
        "a2-elliptic-kernel",
        "--unconstrained",
        "--points",
        "20",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path(), "a2-elliptic-unconstrained");
    assert_eq!(r["kind"], "inequality");
    assert!(r["fraction_above_floor"].as_f64().unwrap() >= 0.95);
}

#[test]
fn mutation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = gk(&[
        "run",
        "--suite",
        "a2-elliptic-kernel",
        "--points",
        "5",
        "--mutate",
        "flip-delta2",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(dir.path(), "a2-elliptic-kernel")["verdict"], "FAIL");
}

#[test]
fn config_errors_exit_two_without_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let out_s = out.to_str().unwrap();
    let bad = dir.path().join("bad.toml");
    for text in ["a_plus = \"one\"", "a_minus = -2.0", "mu = \"not complex\"", "speed = 3", "suites = [\"nope\"]"] {
        std::fs::write(&bad, text).unwrap();
        let o = gk(&["run", "--config", bad.to_str().unwrap(), "--output", out_s]);
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
    assert_eq!(gk(&["run", "--suite", "nope", "--output", out_s]).status.code(), Some(2));
    assert_eq!(gk(&["run", "--config", "/does/not/exist.toml", "--output", out_s]).status.code(), Some(2));
    assert_eq!(gk(&["run", "--format", "xml", "--output", out_s]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "seed = 11\npoints = 6\nmu_prime = \"0.5i\"\nsuites = [\"commutation-a2\", \"gamma-ade\"]\n")
        .unwrap();
    let mut bytes = Vec::new();
    for (i, jobs) in ["1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("o{i}"));
        let o = gk(&["run", "--config", cfg.to_str().unwrap(), "--jobs", jobs, "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        bytes.push(std::fs::read(out.join("commutation-a2.json")).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let r: serde_json::Value = serde_json::from_slice(&bytes[0]).unwrap();
    assert_eq!(r["seed"], 11);
    assert_eq!(r["mu_prime"], serde_json::json!([0.0, 0.5]));
    assert!(!String::from_utf8(bytes[0].clone()).unwrap().contains('\r'));
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["run", "--suite", "gamma-ratio", "--points", "3", "--output", out];
        args.extend_from_slice(extra);
        let o = Command::new(env!("CARGO_BIN_EXE_gk")).args(&args).env("GK_SEED", "5").output().unwrap();
        assert!(o.status.success());
        report(dir.path(), "gamma-ratio")["seed"].as_u64().unwrap()
    };
    assert_eq!(run(&[]), 5);
    assert_eq!(run(&["--seed", "6"]), 6);
}

#[test]
fn json_summary_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let o = gk(&[
        "run",
        "--suite",
        "rational-identity",
        "--points",
        "5",
        "--format",
        "json",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[0]["suite"], "rational-identity");
    assert_eq!(rows[0]["verdict"], "PASS");
}

#[test]
fn eval_prints_fifteen_digits() {
    let o = gk(&["eval", "elliptic_gamma", "--z", "0"]);
    assert_eq!(stdout(&o).trim(), "1.00000000000000 + 0i");

    let o = gk(&["eval", "hyperbolic_gamma", "--z", "0.7"]);
    let text = stdout(&o);
    let parts: Vec<&str> = text.split_whitespace().collect();
    let re: f64 = parts[0].parse().unwrap();
    let im: f64 = parts[2].trim_end_matches('i').parse().unwrap();
    assert!(((re * re + im * im).sqrt() - 1.0).abs() < 1e-14);

    let p = gk_core::ModularParams::default();
    let cfg = gk_core::EvalConfig::default();
    let z = gk_core::Complex64::new(0.3, 0.0);
    let direct = gk_core::gamma::theta_r(&p, gk_core::Sign::Minus, z, &cfg).unwrap();
    let o = gk(&["eval", "theta_R", "--z", "0.3", "--delta", "-"]);
    let printed: f64 = stdout(&o).split_whitespace().next().unwrap().parse().unwrap();
    assert!((printed - direct.re).abs() < 1e-14 * direct.re.abs());
}

#[test]
fn eval_exit_codes() {
    assert_eq!(gk(&["eval", "hyperbolic_gamma", "--z", "0.875i"]).status.code(), Some(3));
    assert_eq!(gk(&["eval", "elliptic_gamma", "--z", "-0.875i"]).status.code(), Some(3));
    assert_eq!(gk(&["eval", "no_such_function", "--z", "0"]).status.code(), Some(2));
    assert_eq!(gk(&["eval", "elliptic_gamma", "--z", "zz"]).status.code(), Some(2));
    let o = gk(&["eval", "s2_kernel", "--v", "0.1,0.2,-0.3", "--w", "0.05,-0.1,0.05", "--z", "0.2,0.1,-0.3"]);
    assert!(o.status.success());
}
