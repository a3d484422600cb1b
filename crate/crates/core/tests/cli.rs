use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pel")).args(args).output().expect("spawn pel")
}

fn doc(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name);
    root.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn shipped_examples_match_the_built_in_fixtures() {
    for (name, text) in pel_core::fixtures::doc_examples() {
        let on_disk = std::fs::read_to_string(doc(name)).unwrap_or_default();
        assert_eq!(on_disk, text, "docs/examples/{name} is stale; rerun the export_docs example");
    }
}

#[test]
fn validate_and_classify_examples() {
    for name in ["modular_curve.json", "morita.json", "gu11.json", "quaternion.json"] {
        let out = pel(&["validate", &doc(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["valid"], true);
    }
    let out = pel(&["classify", &doc("gu11.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["unitary"], serde_json::json!([[1, 1]]));
    assert_eq!(v["shimura"]["is_shimura_datum_for_g0"], true);
    let v = json(&pel(&["classify", &doc("morita.json")]));
    assert_eq!(v["symplectic"], serde_json::json!([1]));
}

#[test]
fn malformed_input_exits_two_with_position() {
    let out = pel(&["validate", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
    let d: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(d["error"], "parse");
    assert_eq!(d["line"], 1);

    let dir = std::env::temp_dir().join(format!("pel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"algebra\": {\"dim_v\": 2, \"mode\": \"raw\"},\n  \"pairing\": [[\"0\", \"x\"]]\n}").unwrap();
    let out = pel(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let d: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(d["line"], 3);
    assert!(d["message"].as_str().unwrap().contains("rational"));
    assert_eq!(pel(&["validate", "/nonexistent/datum.json"]).status.code(), Some(2));
    assert_eq!(pel(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn negative_verdicts_exit_one() {
    let out = pel(&["admissible", "--morphism", &doc("gu11_to_gsp8.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["admissible"], false);
    assert!(v["missing_constituents"].as_array().unwrap().contains(&serde_json::json!([3, 2, 1])));

    let out = pel(&["admissible", "--morphism", &doc("identity_modular_to_morita.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["witness_n"], 2);

    let dir = std::env::temp_dir().join(format!("pel-neg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = &pel_core::fixtures::mutations()[1];
    let path = dir.join("mutant.json");
    std::fs::write(&path, serde_json::to_string(&m.datum).unwrap()).unwrap();
    let out = pel(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["diagnostic"]["code"], m.expected);
    assert_eq!(pel(&["classify", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn hodge_and_rep_commands() {
    let out = pel(&["hodge", "--datum", &doc("modular_curve.json"), "--rep", "std"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!([[-1, 0], [0, -1]]));
    let out = pel(&["hodge", "--datum", &doc("modular_curve.json"), "--rep", r#"{"highest":[2,2]}"#]);
    assert_eq!(json(&out), serde_json::json!([[-2, 0], [-1, -1], [0, -2]]));

    let out = pel(&["rep", "decompose", "--type", "C2", "--tensor", "std,std"]);
    let v = json(&out);
    let highest: Vec<Value> = v["constituents"].as_array().unwrap().iter().map(|c| c["highest"].clone()).collect();
    assert_eq!(highest, vec![serde_json::json!([2, 0]), serde_json::json!([1, 1]), serde_json::json!([0, 0])]);
    assert_eq!(v["dim"], 16);

    let out = pel(&["rep", "char", "--type", "A2", "--highest", "[1,0,0]"]);
    assert_eq!(json(&out)["dim"], 3);
}

#[test]
fn isofun_check_and_output_flag() {
    let dir = std::env::temp_dir().join(format!("pel-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("laws.json");
    let out = pel(&["isofun", "check", "--trials", "20", "--seed", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["laws"].as_array().unwrap().len(), 6);
}
