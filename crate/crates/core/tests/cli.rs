mod common;

use std::process::Command;

use common::fixture;
use serde_json::Value;
use toric_ga::cli;

fn run(args: &[&str]) -> (i32, Value, String) {
    let (code, out, err) = run_raw(args, "");
    let report = serde_json::from_str(&out)
        .unwrap_or_else(|e| panic!("bad report for {args:?}: {e}\n{out}"));
    (code, report, err)
}

fn run_raw(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(args.iter().copied(), &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn fan(name: &str) -> String {
    fixture(&format!("fans/{name}.json")).display().to_string()
}

fn divisor(name: &str) -> String {
    fixture(&format!("divisors/{name}.json"))
        .display()
        .to_string()
}

fn root_set(report: &Value) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = report["result"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r["e"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect()
        })
        .collect();
    v.sort();
    v
}

#[test]
fn fan_validate_reports_completeness() {
    let (code, r, _) = run(&["fan-validate", &fan("p2")]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["properties"]["complete"], true);
    assert_eq!(r["result"]["fan"]["cones"].as_array().unwrap().len(), 7);
}

#[test]
fn overlapping_cones_are_rejected() {
    let (code, r, err) = run(&["fan-validate", &fan("bad_intersection")]);
    assert_eq!(code, cli::EXIT_VALIDATION);
    assert_eq!(r["error"]["code"], cli::EXIT_VALIDATION);
    assert!(err.starts_with("error:"));
}

#[test]
fn roots_of_projective_plane() {
    let (code, r, _) = run(&["roots", &fan("p2")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["count"], 6);
    assert_eq!(r["result"]["complete_enumeration"], true);
}

#[test]
fn unbounded_roots_need_a_bound() {
    let (code, r, _) = run(&["roots", &fan("a2")]);
    assert_eq!(code, cli::EXIT_UNBOUNDED);
    assert!(r["error"].is_object());
    let (code, r, _) = run(&["roots", &fan("a2"), "--bound", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["count"], 12);
    assert_eq!(r["result"]["complete_enumeration"], false);
}

#[test]
fn orbits_and_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("orbits.dot");
    let (code, r, _) = run(&[
        "orbits",
        &fan("p2"),
        "--root",
        "1,0",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["orbit_count"], 5);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph orbits"));
    assert_eq!(text.matches("label=\"He\"").count(), 2);
}

#[test]
fn non_root_is_rejected() {
    let (code, _, _) = run(&["orbits", &fan("p2"), "--root", "2,2"]);
    assert_eq!(code, cli::EXIT_NOT_A_ROOT);
    let (code, _, _) = run(&[
        "lnd",
        &fan("a2"),
        "--root",
        "2,2",
        "--element",
        r#"[{"m":[1,0]}]"#,
    ]);
    assert_eq!(code, cli::EXIT_NOT_A_ROOT);
}

#[test]
fn lnd_needs_an_affine_fan() {
    let (code, _, _) = run(&[
        "lnd",
        &fan("p2"),
        "--root",
        "1,0",
        "--element",
        r#"[{"m":[1,0]}]"#,
    ]);
    assert_eq!(code, cli::EXIT_UNSUPPORTED_FAN);
}

#[test]
fn classify_hirzebruch() {
    let (code, r, _) = run(&["classify", &fan("f1")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_input_is_a_parse_error() {
    let (code, _, _) = run_raw(&["roots", "-"], "{not json");
    assert_eq!(code, cli::EXIT_PARSE);
    let (code, _, _) = run_raw(&["no-such-command"], "");
    assert_eq!(code, cli::EXIT_PARSE);
}

#[test]
fn lnd_expansion_and_homomorphism() {
    let (code, r, _) = run(&[
        "lnd",
        &fan("a2"),
        "--root",
        "-1,2",
        "--element",
        r#"[{"m":[1,0]}]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["nilpotency_index"], 2);
    assert_eq!(
        r["result"]["exp_symbolic"]["powers"]
            .as_array()
            .unwrap()
            .len(),
        2
    );

    let (code, r, _) = run(&[
        "lnd",
        &fan("a2"),
        "--root",
        "-1,2",
        "--element",
        r#"[{"m":[0,0]}]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["derivative"], serde_json::json!([]));
    assert_eq!(
        r["result"]["exp_symbolic"]["powers"]
            .as_array()
            .unwrap()
            .len(),
        1
    );

    let product = r#"{"factors": [[{"m":[1,0]}], [{"m":[1,1],"c":[2,3]}]]}"#;
    let (code, r, _) = run(&[
        "lnd",
        &fan("a2"),
        "--root",
        "-1,2",
        "--element",
        product,
        "--time",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["homomorphism"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", &fan("a2"), "--bound", "3"];
    let a = run_raw(&args, "");
    let b = run_raw(&args, "");
    assert_eq!(a, b);
}

#[test]
fn stdin_and_file_give_the_same_hash() {
    let path = fan("p2");
    let text = std::fs::read_to_string(&path).unwrap();
    let (_, from_file, _) = run(&["roots", &path]);
    let (_, out, _) = run_raw(&["roots", "-"], &text);
    let from_stdin: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(from_file["input_sha256"], from_stdin["input_sha256"]);
    assert_eq!(from_file["result"], from_stdin["result"]);
}

#[test]
fn toric_realization_round_trips_through_roots() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["half_line_p1", "orthant_p1", "p1_two_points"] {
        let (code, out, _) = run_raw(&["ah", "toric", &divisor(name)], "");
        assert_eq!(code, 0, "{name}");
        let report: Value = serde_json::from_str(&out).unwrap();
        let e: Vec<i64> = report["result"]["root"]["e"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        let mut want = vec![0; e.len()];
        *want.last_mut().unwrap() = -1;
        assert_eq!(e, want, "{name}");

        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, out).unwrap();
        let (code, roots, _) = run(&["roots", path.to_str().unwrap(), "--bound", "3"]);
        assert_eq!(code, 0, "{name}");
        assert!(root_set(&roots).contains(&want), "{name}");
    }
}

#[test]
fn normalize_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["p1_two_points", "a1_single_vertex"] {
        let (code, first, _) = run_raw(&["ah", "normalize", &divisor(name)], "");
        assert_eq!(code, 0, "{name}");
        let path = dir.path().join("n.json");
        std::fs::write(&path, &first).unwrap();
        let (code, second, _) = run(&["ah", "normalize", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}");
        let first: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(
            first["result"]["divisor"], second["result"]["divisor"],
            "{name}"
        );
        let m = &second["result"]["mobius"];
        assert_eq!(
            (m["a"].clone(), m["b"].clone(), m["c"].clone()),
            (
                serde_json::json!([1, 1]),
                serde_json::json!([0, 1]),
                serde_json::json!([0, 1])
            )
        );
    }
}

#[test]
fn ah_eval_and_coherence() {
    let (code, r, _) = run(&["ah", "eval", &divisor("half_line_p1"), "--weight", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["weight_dim"], 4);

    let (code, r, _) = run(&["ah", "coherent", &divisor("half_shift"), "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["d"], 2);
    assert_eq!(r["result"]["s"], -1);

    for (name, degree, cond) in [
        ("violates_ii", "0,0", "ii"),
        ("violates_iii", "0,0", "iii"),
        ("violates_iv", "1", "iv"),
    ] {
        let (code, r, _) = run(&["ah", "coherent", &divisor(name), "--degree", degree]);
        assert_eq!(code, cli::EXIT_AH, "{name}");
        let conds: Vec<&str> = r["result"]["violations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["condition"].as_str().unwrap())
            .collect();
        assert_eq!(conds, vec![cond], "{name}");
    }
}

#[test]
fn binary_matches_library() {
    let exe = env!("CARGO_BIN_EXE_toric-ga");
    let path = fan("p1xp1");
    let out = Command::new(exe).args(["roots", &path]).output().unwrap();
    assert!(out.status.success());
    let (_, lib, _) = run_raw(&["roots", &path], "");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib);

    let out = Command::new(exe)
        .args(["roots", &fan("a2")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(cli::EXIT_UNBOUNDED));
}
