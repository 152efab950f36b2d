use std::path::Path;
use std::process::{Command, Output};

use matsemi_oracle::Tables;
use serde_json::Value;

fn matsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matsemi")).args(args).env_remove("MATSEMI_SIZE_CAP").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

/// Determinant `M_2(Z_2) -> Z_2`: 1 exactly on the invertible matrices.
fn det_map() -> String {
    let units = Tables::mat2(&Tables::zmod(2)).units();
    let img: Vec<u32> = (0..16).map(|x| units.contains(&x) as u32).collect();
    serde_json::json!({"dom": "mat:2:zmod:2", "cod": "zmod:2", "img": img}).to_string()
}

#[test]
fn ring_info_reports_structure() {
    let o = matsemi(&["ring", "info", "mat:2:zmod:2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["size"], 16);
    assert_eq!(v["units_count"], 6);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let o = matsemi(&["ring", "info", "--ring", "gauss:3", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("units: 8"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&matsemi(&["ring", "info", "zmod:0"])), 2);
    assert_eq!(code(&matsemi(&["ring", "info", "mat:2:foo"])), 2);
    assert_eq!(code(&matsemi(&["nonsense"])), 2);
    assert_eq!(code(&matsemi(&["enumerate", "--dom", "zmod:2"])), 2);
    assert_eq!(code(&matsemi(&["enumerate", "--dom", "zmod:2", "--cod", "zmod:2", "--filter", "bogus"])), 2);
    assert_eq!(code(&matsemi(&["--workers", "0", "ring", "info", "zmod:2"])), 2);
    assert_eq!(code(&matsemi(&["--format", "xml", "ring", "info", "zmod:2"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"dom\": \"zmod:2\", \"cod\": ");
    assert_eq!(code(&matsemi(&["map", "check", "--map", &bad])), 2);
    let short = write(dir.path(), "short.json", r#"{"dom":"zmod:4","cod":"zmod:4","img":[0,1]}"#);
    assert_eq!(code(&matsemi(&["map", "check", "--map", &short])), 2);
    let range = write(dir.path(), "range.json", r#"{"dom":"zmod:2","cod":"zmod:2","img":[0,2]}"#);
    assert_eq!(code(&matsemi(&["map", "check", "--map", &range])), 2);
    let extra = write(dir.path(), "extra.json", r#"{"dom":"zmod:2","cod":"zmod:2","img":[0,1],"x":1}"#);
    assert_eq!(code(&matsemi(&["map", "check", "--map", &extra])), 2);
    assert_eq!(code(&matsemi(&["map", "check", "--map", "/nonexistent/map.json"])), 2);
}

#[test]
fn size_cap_from_flag_and_env() {
    assert_eq!(code(&matsemi(&["--size-cap", "80", "ring", "info", "mat:2:zmod:3"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_matsemi"))
        .args(["ring", "info", "mat:2:zmod:3"])
        .env("MATSEMI_SIZE_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&matsemi(&["--size-cap", "81", "ring", "info", "mat:2:zmod:3"])), 0);
}

#[test]
fn determinant_fails_corner_and_additivity() {
    let dir = tempfile::tempdir().unwrap();
    let det = write(dir.path(), "det.json", &det_map());
    let o = matsemi(&["map", "check", "--map", &det, "--mult"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r[0]["predicate"], "multiplicative");
    assert_eq!(r[0]["counts"]["checked"], 256);
    assert_eq!(r[0]["counts"]["violations"], 0);

    let o = matsemi(&["map", "check", "--map", &det, "--mult", "--corner"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r[1]["predicate"], "corner_relation");
    assert_eq!(r[1]["pass"], false);
    assert!(!r[1]["witnesses"].as_array().unwrap().is_empty());

    let o = matsemi(&["map", "check", "--map", &det, "--add", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("predicate,pass,checked,violations,first_witness\nadditive,false,256,"));
}

#[test]
fn check_report_shape_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", r#"{"dom":"zmod:3","cod":"zmod:3","img":[0,1,2]}"#);
    let o = matsemi(&["map", "check", "--map", &id, "--ring-hom"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(at("predicate") < at("pass") && at("pass") < at("witnesses") && at("witnesses") < at("counts"));
    assert!(at("counts") < at("checked") && at("checked") < at("violations"));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v[0].as_object().unwrap().len(), 4);
    assert_eq!(v[0]["counts"].as_object().unwrap().len(), 2);
}

#[test]
fn enumerate_streams_ndjson() {
    let o = matsemi(&["enumerate", "--dom", "zmod:2", "--cod", "zmod:2"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(
        out,
        "{\"dom\":\"zmod:2\",\"cod\":\"zmod:2\",\"img\":[0,0]}\n\
         {\"dom\":\"zmod:2\",\"cod\":\"zmod:2\",\"img\":[0,1]}\n\
         {\"dom\":\"zmod:2\",\"cod\":\"zmod:2\",\"img\":[1,1]}\n"
    );
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["maps"], 3);
    assert_eq!(summary["complete"], true);

    let o = matsemi(&["enumerate", "--dom", "zmod:2", "--cod", "zmod:2", "--limit", "1"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 1);
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["truncated"], true);

    let o = matsemi(&["enumerate", "--dom", "zmod:2", "--cod", "zmod:2", "--filter", "unital", "--filter", "injective"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 1);
}

#[test]
fn enumerate_from_query_file() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(
        dir.path(),
        "q.json",
        r#"{"dom":"mat:2:zmod:2","cod":"zmod:2","filters":["corner_relation"],"limit":5,"order":"lexicographic"}"#,
    );
    let o = matsemi(&["enumerate", "--query", &q]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> =
        String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0]["img"].as_array().unwrap().iter().all(|x| x == 0));
    let bad = write(dir.path(), "bad.json", r#"{"dom":"zmod:2","cod":"zmod:2","limit":0}"#);
    assert_eq!(code(&matsemi(&["enumerate", "--query", &bad])), 2);
}

#[test]
fn doubling_trace_replays_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", r#"{"dom":"zmod:4","cod":"zmod:4","img":[0,1,0,3]}"#);
    let o = matsemi(&["verify", "doubling-gl", "--map", &cube, "--depth", "1"]);
    assert_eq!(code(&o), 1);
    let trace = json(&o);
    assert_eq!(trace["kind"], "doubling");
    let first = &trace["trace"]["conflicts"][0];
    assert_eq!((first["level"].as_u64(), first["a"].as_u64(), first["b"].as_u64()), (Some(1), Some(1), Some(1)));

    let saved = write(dir.path(), "trace.json", &String::from_utf8(o.stdout).unwrap());
    let o = matsemi(&["verify", "--replay", &saved]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["pass"], true);

    let mut forged = trace.clone();
    forged["trace"]["conflicts"][0]["table"] = Value::from(2);
    let forged = write(dir.path(), "forged.json", &forged.to_string());
    assert_eq!(code(&matsemi(&["verify", "--replay", &forged])), 1);

    let mut other = trace;
    other["map"]["img"] = serde_json::json!([0, 1, 2, 3]);
    let other = write(dir.path(), "other.json", &other.to_string());
    assert_eq!(code(&matsemi(&["verify", "--replay", &other])), 1);

    let garbage = write(dir.path(), "garbage.json", r#"{"kind":"doubling"}"#);
    assert_eq!(code(&matsemi(&["verify", "--replay", &garbage])), 2);
}

#[test]
fn corner_certificate_replays() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", r#"{"dom":"mat:2:zmod:2","cod":"mat:2:zmod:2","img":[0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15]}"#);
    let o = matsemi(&["verify", "prop1", "--map", &id]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kind"], "corner");
    assert_eq!(v["certificate"]["pass"], true);
    let saved = write(dir.path(), "cert.json", &String::from_utf8(o.stdout).unwrap());
    assert_eq!(code(&matsemi(&["verify", "--replay", &saved])), 0);

    let det = write(dir.path(), "det.json", &det_map());
    // The certificate needs the corner relation, which the determinant lacks.
    let o = matsemi(&["verify", "prop1", "--map", &det]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("corner relation"));
}

#[test]
fn verify_suites_pass_on_small_inputs() {
    let o = matsemi(&["verify", "prop1", "--dom", "mat:2:zmod:2", "--cod", "zmod:2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!((v["multiplicative"].as_u64(), v["corner_relation"].as_u64()), (Some(3), Some(1)));
    assert_eq!(v["sets_equal"], true);

    let o = matsemi(&["verify", "tensor", "--ring", "zmod:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["functions"], 4);

    let o = matsemi(&["verify", "witnesses", "--ring", "zmod:3"]);
    assert_eq!(code(&o), 0);

    let o = matsemi(&["verify", "doubling-unitary", "--ring", "zmod:4", "--depth", "2", "--no-padding"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["options"]["zero_padding"], false);

    assert_eq!(code(&matsemi(&["verify", "doubling-gl", "--ring", "zmod:4", "--depth", "5"])), 2);
    assert_eq!(code(&matsemi(&["verify", "witnesses"])), 2);
}

#[test]
fn probes() {
    let o = matsemi(&["counterexamples", "--dom", "zmod:4", "--cod", "zmod:4"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["maps"].as_array().unwrap().contains(&serde_json::json!([0, 1, 0, 3])));
    assert_eq!(v["exhaustive"], true);

    let o = matsemi(&["unique-addition", "--dom", "gauss:3", "--cod", "gauss:3"]);
    let v = json(&o);
    assert_eq!(v["isomorphisms"].as_array().unwrap().len(), 4);
    assert_eq!(v["additive_count"], 2);
    assert_eq!(code(&matsemi(&["unique-addition", "--dom", "zmod:4", "--cod", "zmod:2"])), 2);

    let o = matsemi(&["decompose", "--ring", "zmod:4", "--element", "2", "--kmax", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["summands"].as_array().unwrap().len(), 2);
    let o = matsemi(&["decompose", "--ring", "zmod:4", "--element", "2", "--kmax", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn formats_agree_across_workers() {
    for fmt in ["json", "csv", "text"] {
        let a = matsemi(&["--workers", "1", "--format", fmt, "verify", "tensor", "--ring", "zmod:3"]);
        let b = matsemi(&["--workers", "4", "--format", fmt, "verify", "tensor", "--ring", "zmod:3"]);
        assert_eq!(a.stdout, b.stdout, "{fmt}");
        assert!(!a.stdout.is_empty());
    }
}
