use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn aquiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aquiver"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = aquiver(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn projectives_table_matches_golden() {
    let o = data("data/sink0_source1.json");
    let golden = std::fs::read_to_string(data("golden/projectives_sink0_source1.txt")).unwrap();
    assert_eq!(stdout(&["projectives", path(&o)]), golden);
}

#[test]
fn descending_projectives() {
    let text = stdout(&["projectives", path(&data("data/descending.json"))]);
    assert!(text.contains("(-inf,a]     P_a\n"), "{text}");
    assert!(text.contains("(-inf,a)     P_{a)}\n"), "{text}");
}

#[test]
fn reversed_orientation_swaps_tables() {
    let dir = tempfile::tempdir().unwrap();
    let reversed = dir.path().join("reversed.json");
    std::fs::write(
        &reversed,
        r#"{"criticals": [{"pos": "0", "kind": "source"}, {"pos": "1", "kind": "sink"}]}"#,
    )
    .unwrap();
    let o = data("data/sink0_source1.json");
    let inj = stdout(&["projectives", path(&reversed), "--injective"]);
    let proj = stdout(&["projectives", path(&o)]);
    assert_eq!(inj.replace("I_", "P_"), proj);
}

#[test]
fn hom_and_ext() {
    let o = data("data/descending.json");
    assert_eq!(stdout(&["hom", path(&o), "[0,2)", "[1,3)"]), "1\n");
    assert_eq!(stdout(&["hom", path(&o), "(0,1]", "(0,1]"]), "1\n");
    assert_eq!(json(&["hom", path(&o), "[1,3)", "[0,2)"])["hom"], 0);
    // (-inf,1] is projective here.
    assert_eq!(stdout(&["ext", path(&o), "(-inf,1]", "[0,2)"]), "0\n");
}

#[test]
fn presentation_json() {
    let o = data("data/descending.json");
    let v = json(&["present", path(&o), "[0,1)"]);
    assert_eq!(v["p0"][0]["label"], "P_{1)}");
    assert_eq!(v["p1"][0]["label"], "P_{0)}");
    assert_eq!(v["signs"].as_array().unwrap().len(), 1);
    assert!(v["map"]["cells"].is_array());
}

#[test]
fn ar_answers() {
    let o = data("data/sink0_source1.json");
    let v = json(&["ar", path(&o), "(1/4,1/2]", "--ending"]);
    assert_eq!(v["answer"], "Exists");
    assert_eq!(v["sequence"]["left"]["lo_closed"], true);
    assert_eq!(v["sequence"]["middle"].as_array().unwrap().len(), 2);
    let point = json(&["ar", path(&o), "{1/2}", "--starting"]);
    assert_eq!(point["answer"], "ProvenNonexistent");
    assert!(point["sequence"].is_null());
    let wide = json(&["ar", path(&o), "[-1,2]", "--ending"]);
    assert_eq!(wide["answer"], "OutOfPaperScope");
}

#[test]
fn scramble_round_trip_is_deterministic() {
    let bars = data("data/bars.json");
    let first = stdout(&["scramble", path(&bars), "--seed", "7"]);
    assert_eq!(first, stdout(&["scramble", path(&bars), "--seed", "7"]));
    assert_ne!(first, stdout(&["scramble", path(&bars), "--seed", "8"]));

    let dir = tempfile::tempdir().unwrap();
    let tame = dir.path().join("tame.json");
    std::fs::write(&tame, &first).unwrap();
    let from_tame = json(&["decompose", path(&tame)]);
    let from_bars = json(&["decompose", path(&bars)]);
    assert_eq!(from_tame, from_bars);
    assert_eq!(from_bars["bars"][0]["mult"], 2);
}

#[test]
fn scramble_needs_seed() {
    let out = aquiver(&["scramble", path(&data("data/bars.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn decompose_lists_bars() {
    let text = stdout(&["decompose", path(&data("data/bars.json"))]);
    assert!(
        text.starts_with("(-inf,1/2] x2\n[0,1) x1\n(1/2,+inf) x1\n\n{"),
        "{text}"
    );
}

#[test]
fn empty_rep_decomposes_to_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("empty.json");
    std::fs::write(&file, r#"{"orientation": {"criticals": []}, "bars": []}"#).unwrap();
    let v = json(&["decompose", path(&file)]);
    assert_eq!(v["bars"], Value::Array(vec![]));
}

#[test]
fn bad_input_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        "{\"orientation\": {\"criticals\": []},\n \"bars\": [{\"lo\": \"0\"}]}",
    )
    .unwrap();
    let out = aquiver(&["decompose", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let o = data("data/descending.json");
    assert_eq!(aquiver(&["hom", path(&o), "[2,1]", "[0,1]"]).status.code(), Some(2));
    assert_eq!(aquiver(&["decompose", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(
        aquiver(&["hom", path(&o), "[0,1]", "[0,1]", "--field", "Fp:4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn prime_field_flag_reads_tame_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tame.json");
    // Over F_2 the two maps compose to zero; over Q they do not.
    std::fs::write(
        &file,
        r#"{"orientation": {"criticals": []},
            "tame": {"grid": ["0"], "dims": [1, 2, 1],
                     "maps": [{"dir": "down", "entries": [["1", "1"]]},
                              {"dir": "down", "entries": [["1"], ["1"]]}]}}"#,
    )
    .unwrap();
    let q = json(&["decompose", path(&file)]);
    let f2 = json(&["decompose", path(&file), "--field", "Fp:2"]);
    assert_eq!(q["bars"][0]["lo"], "-inf");
    assert_eq!(q["bars"][0]["hi"], "+inf");
    assert_ne!(q["bars"], f2["bars"]);
    assert_eq!(f2["bars"].as_array().unwrap().len(), 2);
}

#[test]
fn threads_variable_does_not_change_output() {
    let bars = data("data/bars.json");
    let plain = aquiver(&["scramble", path(&bars), "--seed", "3"]).stdout;
    let threaded = Command::new(env!("CARGO_BIN_EXE_aquiver"))
        .args(["scramble", path(&bars), "--seed", "3"])
        .env("AQUIVER_THREADS", "8")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(plain, threaded);
}
