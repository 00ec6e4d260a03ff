use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-screening"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lattice-screening-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn screeners_on_a3() {
    let p = write("a3.txt", "2 -1 0\n-1 2 -1\n0 -1 2\n");
    let out = run(&["screeners", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["canonical_count"], 9);
    let nonroot: Vec<&Value> = r["results"]["screeners"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["root"] == false)
        .collect();
    assert_eq!(nonroot.len(), 3);
    assert!(nonroot.iter().all(|s| s["norm"] == 4));
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn catalog_feeds_classify() {
    let out = run(&["catalog", "--type", "D", "--rank", "4", "--lattice"]);
    assert_eq!(out.status.code(), Some(0));
    let p = write("d4.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = run(&["classify", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["extended_type"], "F_4(1)");
    assert_eq!(r["results"]["screener_count"], 48);
}

#[test]
fn catalog_scale_and_names() {
    let r = json(&run(&["catalog", "--type", "A_2", "--scale", "3"]));
    assert_eq!(r["results"]["gram"], serde_json::json!([[6, -3], [-3, 6]]));
    assert_eq!(run(&["catalog", "--type", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "--type", "A"]).status.code(), Some(1));
}

#[test]
fn decompose_scaled_sum() {
    let p = write("sum.json", r#"{"gram": [[4,-2,0],[-2,4,0],[0,0,6]], "name": "A2(2)+A1(3)"}"#);
    let r = json(&run(&["decompose", "--input", p.to_str().unwrap()]));
    let comps: Vec<(String, i64)> = r["results"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["type"].as_str().unwrap().to_string(), c["scale"].as_i64().unwrap()))
        .collect();
    assert!(comps.contains(&("A_2".into(), 2)));
    assert!(comps.contains(&("A_1".into(), 3)));
}

#[test]
fn rank2_warning_code() {
    let p = write("odd2b.txt", "2 -1\n-1 1\n");
    let out = run(&["rank2", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["warnings"][0]["code"], "W_RANK2_2B_ODD_P");
    let p = write("a2.txt", "2 -1\n-1 2\n");
    let r = json(&run(&["rank2", "--input", p.to_str().unwrap()]));
    assert_eq!(r["warnings"], serde_json::json!([]));
    assert_eq!(r["results"]["agrees"], true);
}

#[test]
fn pairs_for_one_vector() {
    let p = write("twelve.json", r#"{"gram": [[12]]}"#);
    let out = run(&["pairs", "--input", p.to_str().unwrap(), "--vector", "1", "--max-r", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let decs = r["results"]["momenta"][0]["pairs"]["decompositions"].as_array().unwrap();
    let ps: Vec<(i64, i64)> = decs
        .iter()
        .map(|d| (d["p"].as_i64().unwrap(), d["p_prime"].as_i64().unwrap()))
        .collect();
    assert_eq!(ps, vec![(1, 6), (2, 3), (3, 2), (6, 1)]);
    let six_one = &decs[3];
    assert_eq!(six_one["type_iv"][0]["m"], serde_json::json!([4, 6]));
    let p = write("odd.txt", "1 0\n0 3\n");
    let r = json(&run(&["pairs", "--input", p.to_str().unwrap(), "--vector", "1,0"]));
    assert_eq!(r["warnings"][0]["code"], "W_PAIRS_ODD_DOUBLED");
}

#[test]
fn exit_codes() {
    let bad = write("bad.json", r#"{"gram": [[1,2],[2,1]]}"#);
    let out = run(&["screeners", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_NOT_POSITIVE_DEFINITE"));
    assert!(out.stdout.is_empty());

    let broken = write("broken.json", "{\"gram\": [[2,\n x]]}");
    let out = run(&["screeners", "--input", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(run(&["screeners"]).status.code(), Some(1));
    assert_eq!(run(&["oracle-check"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["screeners", "--input", "/nonexistent/file"]).status.code(), Some(2));

    // not generated by its screeners
    let p = write("index2.txt", "4 1\n1 4\n");
    let out = run(&["classify", "--input", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_NOT_GENERATED"));
}

#[test]
fn oracle_check_is_reproducible() {
    let args = ["oracle-check", "--rank", "2", "--cases", "100", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["results"]["status"], "PASS");
    assert!(String::from_utf8_lossy(&a.stderr).contains("oracle-check: PASS"));
}

#[test]
fn reports_are_byte_identical_and_text_renders() {
    let p = write("d5.txt", &{
        let out = run(&["catalog", "--type", "D5", "--lattice"]);
        String::from_utf8(out.stdout).unwrap()
    });
    for cmd in ["screeners", "decompose", "classify", "pairs"] {
        let a = run(&[cmd, "--input", p.to_str().unwrap()]);
        let b = run(&[cmd, "--input", p.to_str().unwrap()]);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let out = run(&["classify", "--input", p.to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("extended_type: C_5(1)"), "{text}");
}
