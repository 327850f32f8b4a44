use std::path::Path;
use std::process::{Command, Output};

fn sdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdm"))
        .args(args)
        .env_remove("SDM_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const REVISED_DM2: &str = r#"{
  "criterion_weights": {"c1": 0.4, "c2": 0.4, "c3": 0.2},
  "score_matrix": {
    "c1": {"a1": 1.0, "a2": 1.0, "a3": 1.0, "a4": 1.0, "a5": 1.0},
    "c2": {"a1": 0.5, "a2": 1.0, "a3": 0.5, "a4": 0.5, "a5": 1.0},
    "c3": {"a1": 0.3, "a2": 0.5, "a3": 0.3, "a4": 0.3, "a5": 0.5}
  }
}"#;

#[test]
fn demo_prints_ranking_and_passes() {
    let o = sdm(&["demo"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("a2 > a1 > a3 > a5 > a4"));
    assert!(out.contains("must revise: DM2"));
    assert!(out.contains("0.951"));
    assert!(stderr(&o).is_empty());
}

#[test]
fn literal_demo_notes_weight_difference() {
    let o = sdm(&["demo", "--mode", "literal"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("a2 > a1 > a3 > a5 > a4"));
    assert!(out.contains("differ from the reference table"));
    // exp(-0.9 * 0.05) for DM1 on a1.
    assert!(out.contains("0.956"));
}

#[test]
fn json_demo_has_same_totals() {
    let o = sdm(&["demo", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let totals: Vec<f64> = v["totals"]
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (t, e) in totals.iter().zip([2.266, 2.7, 2.084, 1.345, 1.823]) {
        assert!((t - e).abs() <= 1e-3);
    }
    assert_eq!(v["result"]["ranking"][0], "a2");
}

#[test]
fn file_session_walkthrough() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("session.json");
    let s = p(&session);
    assert_eq!(code(&sdm(&["demo", "--save-fixture", s])), 0);

    let o = sdm(&["evaluate", "--session", s]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0.340"));

    let o = sdm(&["finalize", "--session", s]);
    assert_eq!(code(&o), 3, "nothing assessed yet");

    let o = sdm(&["round", "--session", s]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("must revise: DM2"));

    let profile = dir.path().join("dm2.json");
    std::fs::write(&profile, REVISED_DM2).unwrap();
    let o = sdm(&[
        "submit",
        "--session",
        s,
        "--dm",
        "DM3",
        "--profile",
        p(&profile),
    ]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("SDM"));
    let o = sdm(&[
        "submit",
        "--session",
        s,
        "--dm",
        "DM2",
        "--profile",
        p(&profile),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("0.660"));

    let o = sdm(&["round", "--session", s]);
    assert!(stdout(&o).contains("must revise: none"));
    let o = sdm(&["finalize", "--session", s]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ranking: a2 > a1 > a3 > a5 > a4"));

    let before = std::fs::read(&session).unwrap();
    let o = sdm(&["round", "--session", s]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("finalized"));
    assert_eq!(std::fs::read(&session).unwrap(), before);

    let o = sdm(&["report", "--session", s, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "FINALIZED");
    assert_eq!(v["rounds"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&sdm(&["round", "--session", p(&missing)])), 2);

    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "{\"version\": 1,").unwrap();
    assert_eq!(code(&sdm(&["report", "--session", p(&garbage)])), 3);

    assert_eq!(code(&sdm(&["demo", "--unknown"])), 3);
    assert_eq!(code(&sdm(&["demo", "--mode", "other"])), 3);
    assert_eq!(code(&sdm(&[])), 3);
    assert_eq!(code(&sdm(&["--help"])), 0);
}

fn write_spec(dir: &Path, step: f64, seed: u64) -> std::path::PathBuf {
    let spec = dir.join("spec.json");
    let text = format!(
        r#"{{"dm_count": 4, "alternative_count": 5, "criterion_count": 3, "theta": 0.9,
            "strategies": [{{"kind": "CONFORMIST", "step": {step}}}],
            "seed": {seed}, "replications": 100, "max_rounds": 10}}"#
    );
    std::fs::write(&spec, text).unwrap();
    spec
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), 0.5, 17);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = sdm(&["simulate", "--spec", p(&spec), "--out", p(out), "--csv"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(
        std::fs::read(a.with_extension("csv")).unwrap(),
        std::fs::read(b.with_extension("csv")).unwrap()
    );

    let c = dir.path().join("c.json");
    sdm(&[
        "simulate",
        "--spec",
        p(&spec),
        "--out",
        p(&c),
        "--seed",
        "18",
    ]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn simulate_conformists_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), 1.0, 5);
    let out_dir = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_sdm"))
        .args(["simulate", "--spec", p(&spec)])
        .env("SDM_OUTPUT_DIR", &out_dir)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("rate 1.0"));
    assert!(out_dir.join("simulation-5.json").exists());

    let o = sdm(&["simulate", "--spec", p(&spec), "--replications", "0"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());

    std::fs::write(&spec, "{\"dm_count\": 4}").unwrap();
    assert_eq!(code(&sdm(&["simulate", "--spec", p(&spec)])), 3);
}
