use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use speclab::config::DEFAULT_SEED;
use speclab::standard_registry;
use tempfile::TempDir;

fn speclab(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_speclab"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("THREADS", t),
        None => cmd.env_remove("THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn manifest(out: &Path) -> Value {
    let mut p = out.as_os_str().to_owned();
    p.push(".manifest.json");
    serde_json::from_slice(&std::fs::read(PathBuf::from(p)).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn every_subcommand_is_registered() {
    let names = standard_registry().names();
    for n in [
        "simulate",
        "kernel-table",
        "dyson-check",
        "iwasawa-drift",
        "eigen-lambda",
        "bessel-zeros",
        "sl-spectrum-check",
        "xi-table",
        "zero-count",
        "mellin-check",
        "thorin-report",
        "correspond",
    ] {
        assert!(names.contains(&n), "{n} missing");
    }
    assert_eq!(names.len(), 12);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(speclab(&["--help"], None).status.code(), Some(0));
    assert_eq!(speclab(&["--version"], None).status.code(), Some(0));
    assert_eq!(speclab(&["zero-count", "--help"], None).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one_with_help() {
    let o = speclab(&["zero-count", "--bogus", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("--bogus") && err.contains("--which"), "{err}");
    assert_eq!(speclab(&["no-such-command"], None).status.code(), Some(1));
    assert_eq!(speclab(&[], None).status.code(), Some(1));
    assert_eq!(speclab(&["zero-count", "--r", "abc"], None).status.code(), Some(1));
    assert_eq!(speclab(&["zero-count", "--format", "xml"], None).status.code(), Some(1));
    assert_eq!(speclab(&["xi-table", "--z_max", "5"], Some("0")).status.code(), Some(1));
}

#[test]
fn reports_refuse_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.csv");
    let o = speclab(&["correspond", "--format", "csv", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failed_check_exits_two_and_still_writes_artifacts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("eig.json");
    let o = speclab(&["eigen-lambda", "--n", "3", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("λ = -4"), "{err}");
    let report: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["claimed"], -4.0);
    assert!(report["residual"].as_f64().unwrap() > 1.0);
    let m = manifest(&out);
    assert_eq!(m["exit_code"], 2);
    assert_eq!(m["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn zero_count_example() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("counts.json");
    let o = speclab(&["zero-count", "--which", "both", "--r", "60", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let (n, n_star) = (v["N"].as_i64().unwrap(), v["N_star"].as_i64().unwrap());
    assert_eq!(v["diff"].as_i64().unwrap(), n - n_star);
    assert!(v["asym_N"].as_f64().is_some());
}

#[test]
fn mellin_example_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.csv");
    let args = ["mellin-check", "--law", "w", "--a", "1", "--s", "1", "--samples", "100000", "--seed", "7"];
    let o = speclab(&[&args[..], &["--out", out.to_str().unwrap()]].concat(), None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let bytes = std::fs::read(&out).unwrap();
    let mut rdr = csv::Reader::from_reader(&bytes[..]);
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["s", "analytic", "mc_value", "stderr", "z"]
    );
    let row = rdr.records().next().unwrap().unwrap();
    let analytic: f64 = row[1].parse().unwrap();
    let z: f64 = row[4].parse().unwrap();
    assert!((analytic - 2.0 / 3.0).abs() < 1e-12 && z < 3.0);

    let m = manifest(&out);
    assert_eq!(m["config"]["seed"], 7);
    assert_eq!(m["config"]["params"]["law"], "w");
    assert_eq!(m["library_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(m["artifacts"][0]["bytes"], bytes.len());
    assert_eq!(m["artifacts"][0]["sha256"], speclab::artifact::sha256_hex(&bytes));
    assert!(m["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn config_file_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("x.csv");
    let o = |extra: &[&str]| {
        let mut args = vec!["xi-table", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        speclab(&args, None)
    };

    // Empty file: defaults.
    std::fs::write(&cfg, "").unwrap();
    assert_eq!(o(&[]).status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["config"]["seed"], DEFAULT_SEED);
    assert_eq!(m["config"]["params"]["z_max"], "40");

    // File overrides defaults, flags override the file.
    std::fs::write(&cfg, "# grid\nseed=7\nz_max = 2\nstep=0.5\n").unwrap();
    assert_eq!(o(&[]).status.code(), Some(0));
    let m = manifest(&out);
    assert_eq!(m["config"]["seed"], 7);
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 1 + 5);
    assert_eq!(o(&["--z_max", "1"]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 1 + 3);

    for (text, needle) in [
        ("seed=7\nseed=8\n", "line 2: duplicate key `seed`"),
        ("z_max=2\nnonsense\n", "line 2: expected key=value"),
        ("colour=red\n", "line 1: unknown key `colour`"),
    ] {
        std::fs::write(&cfg, text).unwrap();
        let r = o(&[]);
        assert_eq!(r.status.code(), Some(1));
        assert!(stderr(&r).contains(needle), "{}", stderr(&r));
    }
    let missing = speclab(&["xi-table", "--config", "/nonexistent/run.cfg"], None);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn json_rendering_of_tables() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let o = speclab(
        &["xi-table", "--z_max", "1", "--step", "0.5", "--format", "json", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[0]["xi"].as_f64().unwrap() - 0.994_2).abs() < 1e-3);
}

#[test]
fn simulate_path_schema() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("p.csv");
    let o = speclab(
        &["simulate", "su", "--n", "2", "--T", "0.01", "--paths", "2", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "path_id,t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11"
    );
    assert_eq!(lines.count(), 2 * 11);
}

#[test]
fn artifacts_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let runs: [&[&str]; 4] = [
        &["simulate", "sl", "--n", "3", "--T", "0.05", "--paths", "3"],
        &["mellin-check", "--law", "t", "--samples", "20000", "--s", "0.5,1"],
        &["dyson-check", "--family", "su", "--paths", "300", "--t", "0.2"],
        &["kernel-table", "--family", "chamber_drift", "--n", "3"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut bytes = Vec::new();
        for threads in ["1", "4"] {
            let out = dir.path().join(format!("r{i}_{threads}"));
            let o = speclab(&[*args, &["--seed", "99", "--out", out.to_str().unwrap()]].concat(), Some(threads));
            assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
            assert_eq!(manifest(&out)["threads"], threads.parse::<u64>().unwrap());
            bytes.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(bytes[0], bytes[1], "{args:?}");
    }
}

#[test]
fn selftests_pass() {
    for name in standard_registry().names() {
        let o = speclab(&[name, "--selftest"], None);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}
