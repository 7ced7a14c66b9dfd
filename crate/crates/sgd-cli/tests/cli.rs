//! End-to-end tests of the `sgd` binary: exit codes, file artifacts, and
//! pipeline idempotence.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sgd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sgd"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    sgd().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

#[test]
fn catalog_list_prints_names_and_orders() {
    let out = run(&["catalog", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("C4"));
    assert!(text.contains("PSL(2,7)"));
    assert!(text.lines().count() >= 30);
}

#[test]
fn usage_error_exits_2() {
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check"]); // missing required args
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_build_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert!(run(&["catalog", "build", "-o", a.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["catalog", "build", "-o", b.to_str().unwrap()])
        .status
        .success());
    let mut names: Vec<String> = std::fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().to_string())
        .collect();
    names.sort();
    assert!(names.contains(&"index.json".to_string()));
    assert_eq!(names.len(), 42); // 41 groups + index
    for name in names {
        let left = std::fs::read(a.join(&name)).unwrap();
        let right = std::fs::read(b.join(&name)).unwrap();
        assert_eq!(left, right, "{name} differs between builds");
    }
}

#[test]
fn catalog_build_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{
  "entries": [
    {"name": "C6", "construction": {"cyclic": 6}},
    {"name": "V4", "construction": {"product": [{"cyclic": 2}, {"cyclic": 2}]}},
    {"name": "PSL(3,2)", "construction": {"psl": [3, 2]}}
  ]
}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("cat");
    let out = run(&[
        "catalog",
        "build",
        "--config",
        config.to_str().unwrap(),
        "-o",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out_dir.join("psl_3_2.json").exists());
    let index: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("index.json")).unwrap())
            .unwrap();
    assert_eq!(index.as_array().unwrap().len(), 3);
    assert_eq!(index[2]["order"], 168);
}

#[test]
fn synth_check_sweep_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let psi = dir.path().join("psi_c2.sexp");
    let job = fixtures().join("jobs/c2.json");

    let out = run(&[
        "synth-describe",
        job.to_str().unwrap(),
        "-o",
        psi.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(psi.exists());

    // A check returning false is still a successful run (exit 0).
    let c2 = fixtures().join("groups/c2.json");
    let c3 = fixtures().join("groups/c3.json");
    let out = run(&[
        "--format",
        "json",
        "check",
        psi.to_str().unwrap(),
        c2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"value\": true"));
    let out = run(&[
        "--format",
        "json",
        "check",
        psi.to_str().unwrap(),
        c3.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"value\": false"));

    // Sweep the whole default catalog against the target: unique.
    let catalog_dir = dir.path().join("catalog");
    assert!(
        run(&["catalog", "build", "-o", catalog_dir.to_str().unwrap()])
            .status
            .success()
    );
    let out = run(&[
        "sweep",
        psi.to_str().unwrap(),
        catalog_dir.to_str().unwrap(),
        "--target",
        c2.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("unique: true"));
}

#[test]
fn verify_pres_failure_exits_1() {
    // C5 presentation with v = 0: diameter 2 > 2^0.
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("bad.json");
    std::fs::write(
        &job,
        format!(
            r#"{{
  "name": "C5-bad-v",
  "presentation": "{p}",
  "group": "{g}",
  "assignment": [[[0, 1, 2, 3, 4]]],
  "v": 0,
  "variant": "simple"
}}"#,
            p = fixtures().join("presentations/c5.json").display(),
            g = fixtures().join("groups/c5.json").display(),
        ),
    )
    .unwrap();
    let out = run(&["verify-pres", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("v_ok=false"));
    // synth-describe refuses too
    let out = run(&["synth-describe", job.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_1() {
    let psi = fixtures().join("delta/delta_3_2.sexp"); // not even a sentence...
    let s4 = fixtures().join("groups/s4.json");
    // A sentence with enough quantifier work to blow a budget of 10 nodes.
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("assoc.sexp");
    std::fs::write(
        &s,
        "(forall v0 (forall v1 (forall v2 (= (* v0 (* v1 v2)) (* (* v0 v1) v2)))))\n",
    )
    .unwrap();
    let out = sgd()
        .env("SGD_BUDGET", "10")
        .args(["check", s.to_str().unwrap(), s4.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // the delta fixture has free variables: check must reject it
    let out = run(&["check", psi.to_str().unwrap(), s4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn diameter_and_tools_run() {
    let c5 = fixtures().join("groups/c5.json");
    let out = run(&["--format", "json", "diameter", c5.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"diameter\": 2"));

    let out = run(&["three-cycles", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("max word length"));

    let out = run(&["three-cycles", "5", "--decompose", "[[0,1],[2,3]]"]);
    assert!(out.status.success());

    let c3 = fixtures().join("groups/c3.json");
    let out = run(&["--format", "json", "aut", c3.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"aut_order\": 2"));

    let c4 = fixtures().join("groups/c4.json");
    let out = run(&["normalizer", c4.to_str().unwrap(), "--brute"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("brute agreement: true"));

    let out = run(&["centre-bound", c4.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("holds"));

    let out = run(&["psl-check", "2", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("≤ n² = 4"));
}

#[test]
fn bench_pipeline_artifacts_and_idempotence() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("bench1");
    let jobs: Vec<String> = ["c2", "c3", "c5"]
        .iter()
        .map(|s| {
            fixtures()
                .join("jobs")
                .join(format!("{s}.json"))
                .display()
                .to_string()
        })
        .collect();

    let mut args: Vec<&str> = vec!["bench"];
    args.extend(jobs.iter().map(String::as_str));
    args.extend(["-o", out_dir.to_str().unwrap()]);
    let out = run(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = std::fs::read_to_string(out_dir.join("bench.csv")).unwrap();
    assert!(csv.starts_with(sgd_cli::bench::CSV_HEADER));
    assert_eq!(csv.lines().count(), 4);
    assert!(out_dir.join("psi_c2.sexp").exists());
    assert!(out_dir.join("bench.json").exists());

    // Every bench sentence re-verifies from the serialized artifacts alone.
    for stem in ["c2", "c3", "c5"] {
        let psi = out_dir.join(format!("psi_{stem}.sexp"));
        let group = fixtures().join("groups").join(format!("{stem}.json"));
        let out = run(&[
            "--format",
            "json",
            "check",
            psi.to_str().unwrap(),
            group.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(
            stdout(&out).contains("\"value\": true"),
            "{stem} sentence must re-verify"
        );
    }

    // Idempotence: a second run reproduces everything except wall-clock times.
    let out_dir2 = dir.path().join("bench2");
    let mut args: Vec<&str> = vec!["bench"];
    args.extend(jobs.iter().map(String::as_str));
    args.extend(["-o", out_dir2.to_str().unwrap()]);
    assert!(run(&args).status.success());
    for stem in ["c2", "c3", "c5"] {
        let a = std::fs::read(out_dir.join(format!("psi_{stem}.sexp"))).unwrap();
        let b = std::fs::read(out_dir2.join(format!("psi_{stem}.sexp"))).unwrap();
        assert_eq!(a, b);
    }
    let strip_times = |path: &Path| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        for record in v["records"].as_array_mut().unwrap() {
            record["check_ms"] = serde_json::Value::Null;
        }
        v
    };
    assert_eq!(
        strip_times(&out_dir.join("bench.json")),
        strip_times(&out_dir2.join("bench.json"))
    );
}

/// The alternating-family bench: A4, A5, A6 jobs all synthesize, self-check,
/// and sweep unique. ~40 s in release; run explicitly with `-- --ignored`.
#[test]
#[ignore = "full A4/A5/A6 bench takes ~40s"]
fn bench_alternating_family_all_unique() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("bench");
    let jobs: Vec<String> = ["a4", "a5", "a6"]
        .iter()
        .map(|s| fixtures().join("jobs").join(format!("{s}.json")).display().to_string())
        .collect();
    let mut args: Vec<&str> = vec!["--format", "csv", "bench"];
    args.extend(jobs.iter().map(String::as_str));
    args.extend(["-o", out_dir.to_str().unwrap()]);
    let out = sgd().env("SGD_BUDGET", "100000000000000").args(&args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 4);
    for line in csv.lines().skip(1) {
        assert!(line.contains(",true,true,"), "record not unique/self-checked: {line}");
        assert!(line.ends_with(",ok"));
    }
}

#[test]
fn bench_flags_wrong_v_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let bad_job = dir.path().join("bad.json");
    std::fs::write(
        &bad_job,
        format!(
            r#"{{
  "name": "C5-bad-v",
  "presentation": "{p}",
  "group": "{g}",
  "assignment": [[[0, 1, 2, 3, 4]]],
  "v": 0,
  "variant": "simple"
}}"#,
            p = fixtures().join("presentations/c5.json").display(),
            g = fixtures().join("groups/c5.json").display(),
        ),
    )
    .unwrap();
    let out_dir = dir.path().join("bench");
    let c2 = fixtures().join("jobs/c2.json");
    let out = run(&[
        "--format",
        "csv",
        "bench",
        c2.to_str().unwrap(),
        bad_job.to_str().unwrap(),
        "-o",
        out_dir.to_str().unwrap(),
    ]);
    // Flagged job: artifacts written, failure reflected in the exit code.
    assert_eq!(out.status.code(), Some(1));
    let csv = stdout(&out);
    assert!(csv.contains("diameter_exceeded"));
    assert!(
        !out_dir.join("psi_c5_bad_v.sexp").exists(),
        "no sentence for the flagged job"
    );
    assert!(out_dir.join("psi_c2.sexp").exists());
}
