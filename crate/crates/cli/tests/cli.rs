use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threefree")).args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn gen_writes_headers() {
    let circ = run_ok(&["gen", "--family", "circulant", "--n", "9", "--steps", "1,2"]);
    assert_eq!(circ.lines().next(), Some("9 18"));
    let dag = run_ok(&["gen", "--family", "random_dag", "--n", "10", "--p", "0", "--seed", "3"]);
    assert_eq!(dag.lines().next(), Some("10 0"));
    let via_spec = run_ok(&["gen", "--spec", "circulant n=9 steps=1,2"]);
    assert_eq!(via_spec, circ);
}

#[test]
fn gen_rejects_invalid_families() {
    assert_eq!(code(&["gen", "--family", "circulant", "--n", "9", "--steps", "3"]), 4);
    assert_eq!(code(&["gen", "--family", "blowup", "--sizes", "1,2"]), 4);
    assert_eq!(code(&["gen", "--family", "repaired", "--n", "5", "--p", "1.5"]), 4);
    assert_eq!(code(&["gen", "--family", "nonsense", "--n", "5"]), 4);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let path = scratch("rr.el");
    let p = path.to_str().unwrap();
    run_ok(&["gen", "--family", "random_repaired", "--n", "14", "--p", "0.5", "--seed", "11", "-o", p]);
    let again = run_ok(&["gen", "--family", "random_repaired", "--n", "14", "--p", "0.5", "--seed", "11"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), again);
    let v = json(&["verify", p]);
    assert_eq!(v["graph"]["n"], 14);
    assert_eq!(v["graph"]["three_free"], true);
}

#[test]
fn verify_reports_graph_facts() {
    let c4 = json(&["verify", &fixture("c4.el")]);
    assert_eq!(c4["graph"]["gamma"], 2);
    assert_eq!(c4["graph"]["three_free"], true);
    assert_eq!(c4["graph"]["acyclic"], false);
    assert_eq!(c4["payload"]["cycle"], serde_json::json!([0, 1, 2, 3]));

    let digon = json(&["verify", &fixture("digon.el")]);
    assert_eq!(digon["graph"]["three_free"], false);
    assert_eq!(digon["graph"]["witness"]["kind"], "digon");

    let empty = json(&["verify", &fixture("empty3.el")]);
    assert_eq!(empty["graph"]["gamma"], 3);
    assert_eq!(empty["graph"]["acyclic"], true);
}

#[test]
fn decycle_c4() {
    let r = json(&["decycle", &fixture("c4.el")]);
    let cert = &r["payload"]["certificate"];
    assert_eq!(cert["removed"].as_array().unwrap().len(), 1);
    assert!((cert["bound"].as_f64().unwrap() - 1.7232).abs() < 1e-12);
    assert_eq!(cert["checks"]["acyclic_after_removal"], true);
    assert_eq!(r["payload"]["verification"]["ok"], true);
}

#[test]
fn decycle_acyclic_input_removes_nothing() {
    let r = json(&["decycle", &fixture("tt6.el")]);
    assert_eq!(r["payload"]["certificate"]["removed"], serde_json::json!([]));
    assert_eq!(r["payload"]["certificate"]["steps"], serde_json::json!([]));
}

#[test]
fn decycle_refuses_non_three_free() {
    let out = run(&["decycle", &fixture("triangle.el")]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("triangle"));
    assert_eq!(code(&["decycle", &fixture("c4.el"), "--mu", "0.2"]), 5);
}

#[test]
fn exact_on_c5() {
    for method in ["dp", "brute"] {
        let r = json(&["exact", &fixture("c5.el"), "--method", method]);
        assert_eq!(r["payload"]["result"]["beta"], 1);
    }
}

#[test]
fn stats_emits_every_vertex() {
    let r = json(&["stats", &fixture("c5.el")]);
    assert_eq!(r["payload"]["vertices"].as_array().unwrap().len(), 5);
    let one = json(&["stats", &fixture("c5.el"), "--vertex", "2"]);
    assert_eq!(one["payload"]["vertices"][0]["v"], 2);
    let csv = run_ok(&["stats", &fixture("c5.el"), "--csv"]);
    assert_eq!(csv.lines().count(), 6);
    assert_eq!(code(&["stats", &fixture("c5.el"), "--vertex", "9"]), 4);
}

#[test]
fn certify_mu() {
    let r = json(&["certify-mu", "--mu", "0.16065"]);
    assert_eq!(r["payload"]["report"]["feasible"], true);
    assert!(r["payload"]["analytic"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let max = json(&["certify-mu", "--maximize"]);
    let mu = max["payload"]["report"]["mu"].as_f64().unwrap();
    assert!(mu > 0.16065 && mu < 0.1607);
    assert_eq!(code(&["certify-mu", "--mu", "0.17"]), 5);
}

#[test]
fn bench_rows() {
    let out = run_ok(&[
        "bench", "--family", "random_repaired", "--n", "12", "--p", "0.4", "--trials", "100", "--seed", "7",
    ]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# schema_version=1"));
    assert!(lines.next().unwrap().starts_with("trial,seed,"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for (i, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0], i.to_string());
        assert_eq!(cols[1], (7 + i).to_string());
        assert_eq!(cols[9], "true", "{row}");
    }
    let again = run_ok(&[
        "bench", "--family", "random_repaired", "--n", "12", "--p", "0.4", "--trials", "100", "--seed", "7",
    ]);
    assert_eq!(again, out);
}

#[test]
fn verify_cert_detects_tampering() {
    let report = scratch("c5-report.json");
    let r = report.to_str().unwrap();
    run_ok(&["decycle", &fixture("c5.el"), "-o", r]);
    assert_eq!(code(&["verify-cert", &fixture("c5.el"), r]), 0);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    v["payload"]["certificate"]["removed"] = serde_json::json!([]);
    let forged = scratch("c5-forged.json");
    std::fs::write(&forged, v.to_string()).unwrap();
    assert_eq!(code(&["verify-cert", &fixture("c5.el"), forged.to_str().unwrap()]), 6);

    std::fs::write(&forged, "{not json").unwrap();
    assert_eq!(code(&["verify-cert", &fixture("c5.el"), forged.to_str().unwrap()]), 3);
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(code(&["verify", "/nonexistent/graph.el"]), 1);
    assert_eq!(code(&["verify"]), 2);
    let bad = scratch("bad.el");
    std::fs::write(&bad, "3 1\n0 x\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&["decycle", &fixture("digon.el")]), 4);
}
