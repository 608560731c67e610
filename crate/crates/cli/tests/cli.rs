use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn orelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orelab"))
        .args(args)
        .env_remove("ORELAB_CAP_ORDER")
        .env_remove("ORELAB_CAP_SUBGROUPS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn temp_catalog(tag: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("orelab-cli-{tag}-{}.txt", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn analyze_interval_s4_transposition() {
    let r = json(&orelab(&["analyze-interval", "--group", "S4", "--subgroup", "(0 1)"]));
    assert_eq!(r["linearly_primitive"], true);
    assert_eq!(r["subgroup_order"], 2);
    assert_eq!(r["distributive"], false);
}

#[test]
fn analyze_interval_c30() {
    let r = json(&orelab(&["analyze-interval", "--group", "C30", "--subgroup", "e"]));
    assert_eq!(r["cyclic"], true);
    assert_eq!(r["coatom_sum_up"], "31/30");
}

#[test]
fn analyze_interval_degenerate() {
    let r = json(&orelab(&["analyze-interval", "--group", "S3", "--subgroup-catalog", "S3"]));
    for flag in [
        "distributive", "boolean", "top_boolean", "bottom_boolean", "dedekind", "cyclic",
        "h_cyclic", "linearly_primitive", "dual_side_linearly_primitive",
    ] {
        assert_eq!(r[flag], true, "{flag}");
    }
}

#[test]
fn ore_witness_c30_has_order_30() {
    let r = json(&orelab(&["ore-witness", "--group", "C30", "--subgroup", "e"]));
    assert_eq!(r["witness_order"], 30);
    assert_eq!(r["verified"], true);
    let out = orelab(&["ore-witness", "--group", "Z/2×Z/2", "--subgroup", "e"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn box_check_c4() {
    let r = json(&orelab(&["box-check", "--group", "C4"]));
    assert_eq!(r["w_cyclic"], true);
    assert_eq!(r["biprojections"], 3);
    assert_eq!(r["trace_e1"], "1/4");
}

#[test]
fn fusion_verify_fixture() {
    let r = json(&orelab(&["fusion-verify", &fixture("fr210.json")]));
    assert_eq!(r["dims"], serde_json::json!([1, 5, 5, 5, 6, 7, 7]));
    assert_eq!(r["global_dimension"], 210);
    assert_eq!(r["simple"], true);
}

#[test]
fn char_table_and_lattice_export() {
    let r = json(&orelab(&["char-table", "--group", "S4"]));
    assert_eq!(r["degrees"], serde_json::json!([1, 1, 2, 3, 3]));
    let l = json(&orelab(&["lattice", "--group", "Z/2×Z/2"]));
    assert_eq!(l["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(l["distributive"], false);
}

#[test]
fn errors_exit_one() {
    assert_eq!(orelab(&["analyze-interval", "--group", "X9", "--subgroup", "e"]).status.code(), Some(1));
    assert_eq!(orelab(&["analyze-interval", "--group", "S3", "--subgroup", "(0 9)"]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_orelab"))
        .args(["analyze-interval", "--group", "S4", "--subgroup", "e"])
        .env("ORELAB_CAP_ORDER", "12")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn scan_is_byte_stable_and_exit_coded() {
    let cat = temp_catalog("stable", "# small\nS3\nC6\nD4\n");
    let cat = cat.to_str().unwrap();
    let a = orelab(&["scan-corpus", "--catalog", cat, "--json"]);
    let b = orelab(&["scan-corpus", "--catalog", cat, "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["counts"]["groups"], 3);
    assert_eq!(r["catalog"]["sha256"].as_str().unwrap().len(), 64);
    assert!(r.get("timing_ms").is_none());

    let csv = orelab(&["scan-corpus", "--catalog", cat, "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("id,group,subgroup"));
    assert_eq!(lines.len(), 1 + r["counts"]["intervals"].as_u64().unwrap() as usize);

    let mocked = orelab(&["scan-corpus", "--catalog", cat, "--mock-counterexample"]);
    assert_eq!(mocked.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&mocked.stdout).unwrap();
    assert_eq!(r["mock"], true);
    assert_eq!(r["counterexamples"][0]["synthetic"], true);
}

#[test]
fn scan_edge_catalogs() {
    let empty = temp_catalog("empty", "");
    let out = orelab(&["scan-corpus", "--catalog", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["counts"]["intervals"], 0);

    // [e, C2] is the only non-degenerate interval of C2, and it is maximal
    let one = temp_catalog("maximal", "C2\n");
    let r: Value = serde_json::from_slice(&orelab(&["scan-corpus", "--catalog", one.to_str().unwrap()]).stdout).unwrap();
    let maximal: Vec<&Value> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["lattice_size"] == 2)
        .collect();
    assert_eq!(maximal.len(), 1);
    assert_eq!(maximal[0]["cyclic"], true);

    let bad = temp_catalog("bad", "C4\nnot-a-group\n");
    let out = orelab(&["scan-corpus", "--catalog", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["errors"][0]["entry"], "not-a-group");
}

#[test]
fn custom_catalog_entry() {
    let cat = temp_catalog("custom", "V; 4; (0 1)(2 3),(0 2)(1 3)\n");
    let out = orelab(&["scan-corpus", "--catalog", cat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["groups"][0]["min_faithful_components"], 2);
    assert_eq!(r["groups"][0]["distributive_chain_length"], 2);
}
