use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("polyadic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyadic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn validate_passes_on_samples() {
    for f in [
        "e1-presentation.json",
        "e2-presentation.json",
        "e3-table.json",
        "s3-n4-presentation.json",
        "s1-system.json",
        "z3-tower-system.json",
        "diamond-system.json",
    ] {
        let o = run(&["validate", &data(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
        assert!(stdout(&o).contains("ok:"), "{f}");
    }
}

#[test]
fn validate_reports_non_latin_base() {
    let p = scratch(
        "bad-base.json",
        r#"{"n":3,"base":{"size":2,"table":[0,1,0,1],"identity":0},"theta":[0,1],"b":0}"#,
    );
    let o = run(&["--json", "validate", &p]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(!v["reports"][0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn validate_reports_broken_condition() {
    // theta = x -> -x on Z4 with b = 1: theta(b) = 3
    let p = scratch(
        "bad-theta.json",
        r#"{"n":3,"base":{"size":4,"table":[0,1,2,3,1,2,3,0,2,3,0,1,3,0,1,2],"identity":0},"theta":[0,3,2,1],"b":1}"#,
    );
    let o = run(&["validate", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("theta(b) != b"), "{}", stdout(&o));
}

#[test]
fn missing_file_and_bad_json_are_input_errors() {
    assert_eq!(run(&["validate", "/nonexistent/x.json"]).status.code(), Some(2));
    let p = scratch("garbage.json", "{\"nonsense\": true}");
    assert_eq!(run(&["validate", &p]).status.code(), Some(2));
}

#[test]
fn derive_matches_sample_table() {
    let o = run(&["derive", &data("e2-presentation.json")]);
    assert_eq!(o.status.code(), Some(0));
    let expected = std::fs::read_to_string(data("e2-table.json")).unwrap();
    assert_eq!(stdout(&o), expected);
    assert_eq!(stdout(&run(&["derive", &data("e2-presentation.json")])), expected);
}

#[test]
fn recover_e3_at_zero() {
    let o = run(&["recover", &data("e3-table.json"), "--base-point", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theta"], serde_json::json!([0, 2, 1]));
    assert_eq!(v["b"], 0);
    assert_eq!(v["base"]["size"], 3);
}

#[test]
fn recover_then_derive_round_trips() {
    let table = std::fs::read_to_string(data("s3-n4-table.json")).unwrap();
    for a in 0..6 {
        let a = a.to_string();
        let o = run(&["recover", &data("s3-n4-table.json"), "--base-point", &a]);
        assert_eq!(o.status.code(), Some(0), "a = {a}");
        let p = scratch(&format!("rec-{a}.json"), &stdout(&o));
        assert_eq!(stdout(&run(&["derive", &p])), table, "a = {a}");
    }
}

#[test]
fn retract_is_a_group_doc() {
    let o = run(&["retract", &data("e2-table.json"), "--base-point", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], 4);
    assert!(v["identity"].is_number());
}

#[test]
fn post_cover_of_e1() {
    let o = run(&["post-cover", &data("e1-presentation.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["size"], 4);
    assert_eq!(v["grading"].as_array().unwrap().len(), 4);
    let from_table = run(&["post-cover", &data("e1-table.json")]);
    assert_eq!(stdout(&from_table), stdout(&o));
}

#[test]
fn measure_on_s1() {
    let sys = data("s1-system.json");
    let cases = [
        (r#"{"level":"Z4","subset":[1]}"#, ["1/4", "1/4", "1/8"]),
        (r#"{"level":"Z4","subset":[0,1,2,3]}"#, ["1/1", "1/1", "1/2"]),
        (r#"{"level":"Z8","subset":[]}"#, ["0/1", "0/1", "0/1"]),
    ];
    for (cyl, want) in cases {
        let o = run(&["--json", "measure", &sys, "--cylinder", cyl]);
        assert_eq!(o.status.code(), Some(0), "{cyl}");
        let v = json(&o);
        assert_eq!(v["m_p"], want[0], "{cyl}");
        assert_eq!(v["m"], want[1], "{cyl}");
        assert_eq!(v["m_star"], want[2], "{cyl}");
        assert_eq!(v["identity_holds"], true);
    }
    let text = run(&["measure", &sys, "--cylinder", r#"{"level":"Z4","subset":[1]}"#]);
    assert!(stdout(&text).contains("holds"));
}

#[test]
fn malformed_cylinders_are_input_errors() {
    let sys = data("s1-system.json");
    for cyl in [
        "not json",
        r#"{"level":"Z16","subset":[1]}"#,
        r#"{"level":"Z4","subset":[9]}"#,
    ] {
        let o = run(&["measure", &sys, "--cylinder", cyl]);
        assert_eq!(o.status.code(), Some(2), "{cyl}");
    }
}

#[test]
fn check_haar_exhaustive_on_s1() {
    let o = run(&["--json", "check-haar", &data("s1-system.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn check_haar_sampled_is_seeded() {
    let sys = data("s3-sign-n4-system.json");
    let args = ["--json", "--seed", "42", "--depth", "4", "check-haar", &sys, "--samples", "200"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let v = json(&a);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["status"] == "probabilistic-pass"));
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn corrupted_system_fails_checks() {
    let text = std::fs::read_to_string(data("s1-system.json")).unwrap();
    let bad = text.replace(r#""Z4>Z2":[0,1,0,1]"#, r#""Z4>Z2":[0,0,1,1]"#);
    assert_ne!(bad, text);
    let p = scratch("bad-system.json", &bad);
    let o = run(&["check-haar", &p]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILED"));
    assert_eq!(run(&["validate", &p]).status.code(), Some(1));
}
