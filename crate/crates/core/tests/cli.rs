// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs of the `clonoid` binary on the fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn clonoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clonoid")).args(args).env("CLONOID_THREADS", "1").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_passes_on_projection_algebra() {
    let o = clonoid(&["check", &fixture("proj.struct"), "--suite", "CA_C"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v[0]["suite"], "CA_C");
    let laws = v[0]["laws"].as_array().unwrap();
    assert_eq!(laws.len(), 5);
    assert!(laws.iter().all(|l| l["verdict"] == "pass_exhaustive"));
    assert!(v[0].get("wall_ms").is_none());
}

#[test]
fn check_fails_on_product_with_witness() {
    let o = clonoid(&["check", &fixture("prodZ2.struct"), "--suite", "CM_L2"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let l2 = &v[0]["laws"][0];
    assert_eq!(l2["name"], "L2");
    assert_eq!(l2["verdict"], "fail");
    let w = &l2["witness"];
    assert!(w["bindings"].as_array().unwrap().iter().any(|b| b["var"] == "sigma"));
    assert_ne!(w["lhs"], w["rhs"]);
}

#[test]
fn malformed_and_ill_typed_files_exit_2() {
    let o = clonoid(&["check", &fixture("malformed.struct")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("malformed.struct:4:19"), "{}", stderr(&o));
    let o = clonoid(&["check", &fixture("badctor.struct")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains(":4:1: not a monoid"), "{}", stderr(&o));
    let o = clonoid(&["check", &fixture("missing.struct")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&clonoid(&["check", &fixture("canonical.struct"), "--suite", "XX"])), 2);
    let o = clonoid(&["check", &fixture("canonical.struct"), "--suite", "CA_C"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("does not apply"));
    assert_eq!(code(&clonoid(&["frobnicate"])), 2);
    assert_eq!(code(&clonoid(&["--help"])), 0);
    assert_eq!(code(&clonoid(&["roundtrip", "--kind", "ca_ac", "--input", &fixture("prodZ2.struct")])), 2);
}

#[test]
fn output_is_byte_identical() {
    let args = ["check", &fixture("arith.struct"), "--suite", "AM_L3,AM_L4", "--cap", "300", "--budget", "100", "--seed", "0x2a"];
    let a = clonoid(&args);
    let b = clonoid(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v[1]["suite"], "AM_L4");
    assert_eq!(v[0]["domain"]["seed"], 42);
    assert_eq!(v[0]["laws"][0]["verdict"], "pass_sampled");
    let t = clonoid(&["check", &fixture("proj.struct"), "--suite", "CA_C", "--timings"]);
    assert!(json(&t)[0]["wall_ms"].is_u64());
}

#[test]
fn default_suites_per_kind() {
    let o = clonoid(&["check", &fixture("canonical.struct"), "--perm-bound", "3", "--index-bound", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o).as_array().unwrap().len(), 1);
    let o = clonoid(&["check", &fixture("monotone.struct"), "--index-bound", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)[0]["suite"], "ABSCLONE");
    let o = clonoid(&["check", &fixture("quantale.struct"), "--suite", "PICA,NEUMANN_N"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v[1]["laws"][2]["name"], "N3");
    let o = clonoid(&["check", &fixture("degenerate.struct"), "--index-bound", "2", "--perm-bound", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let suites: Vec<String> = json(&o).as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap().to_string()).collect();
    assert_eq!(suites, ["MERGE_B", "MONOID", "MMON_L1", "CM_L2"]);
}

#[test]
fn out_and_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = clonoid(&["check", &fixture("prodZ2.struct"), "--suite", "CM_L2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["laws"][0]["verdict"], "fail");
    let o = clonoid(&["check", &fixture("prodZ2.struct"), "--suite", "CM_L2", "--pretty"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("suite CM_L2"));
    assert!(text.lines().any(|l| l.trim_start().starts_with("L2") && l.contains("fail")));
    assert!(text.contains("sigma="));
}

#[test]
fn translate_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("projcm.struct");
    let o = clonoid(&["translate", "--from", "ca", "--to", "cm", "--input", &fixture("proj.struct"), "--out", out.to_str().unwrap(), "--bound", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["constructor"], "ca_to_cm");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("kind = mmonoid") && text.contains("support = 2"));
    let o = clonoid(&["check", out.to_str().unwrap(), "--suite", "CM_L2", "--budget", "25"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(json(&o)[0]["laws"].as_array().unwrap().iter().all(|l| l["verdict"] == "pass_exhaustive"));

    let o = clonoid(&["translate", "--from", "ac", "--to", "ca", "--input", &fixture("monotone.struct")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("constructor = ac_to_ca"));
    for (from, to, file) in [("ca", "ac", "fca2.struct"), ("ca", "pica", "proj.struct"), ("pica", "ecm", "quantale.struct")] {
        let o = clonoid(&["translate", "--from", from, "--to", to, "--input", &fixture(file)]);
        assert_eq!(code(&o), 0, "{from}->{to}: {}", stderr(&o));
    }
    assert_eq!(code(&clonoid(&["translate", "--from", "cm", "--to", "ca", "--input", &fixture("projcm.struct")])), 2);
    assert_eq!(code(&clonoid(&["translate", "--from", "ca", "--to", "cm", "--input", &fixture("prodZ2.struct")])), 2);
}

#[test]
fn roundtrips() {
    for (kind, file) in [("ca_cm", "proj.struct"), ("ca_cm", "projcm.struct"), ("ca_ac", "monotone.struct"), ("ca_ac", "fca2.struct"), ("pica_ecm", "quantale.struct")] {
        let o = clonoid(&["roundtrip", "--kind", kind, "--input", &fixture(file), "--n-bound", "2", "--support", "2"]);
        assert_eq!(code(&o), 0, "{kind} {file}: {}", stderr(&o));
        let v = json(&o);
        assert_eq!(v["kind"], kind);
        assert_eq!(v["passed"], true);
    }
    let o = clonoid(&["roundtrip", "--kind", "ca_cm", "--input", &fixture("prodZ2.struct")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not a cm-monoid"));
}

#[test]
fn classify_types() {
    for (file, ty) in [("projcm.struct", 2), ("prodZ2.struct", 3), ("degenerate.struct", 1), ("leftzero.struct", 4)] {
        let o = clonoid(&["classify", &fixture(file)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(json(&o)["type"], ty, "{file}");
    }
    let v = json(&clonoid(&["classify", &fixture("projcm.struct")]));
    assert!(v["noncommutative"].is_array());
    assert_eq!(code(&clonoid(&["classify", &fixture("proj.struct")])), 2);
}

#[test]
fn dim_and_rank() {
    let o = clonoid(&["dim", &fixture("fca2.struct"), "--element", "and"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["dimensions"][0]["dimension"], 2);
    let v = json(&clonoid(&["dim", &fixture("fca2.struct"), "--element", "2:0011"]));
    assert_eq!(v["dimensions"][0]["dimension"], 1);
    let v = json(&clonoid(&["dim", &fixture("proj.struct"), "--element", "3"]));
    assert_eq!(v["dimensions"][0]["dimension"], 4);
    let v = json(&clonoid(&["dim", &fixture("fca2.struct")]));
    assert_eq!(v["dimensions"].as_array().unwrap().len(), 16);
    let o = clonoid(&["dim", &fixture("leftzero.struct"), "--budget", "8", "--bound", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["checks"][0]["name"], "inclusion");
    assert_eq!(code(&clonoid(&["dim", &fixture("fca2.struct"), "--element", "#99"])), 2);

    let v = json(&clonoid(&["rank", &fixture("canonical.struct"), "--element", "#0"]));
    assert_eq!(v["ranks"][0]["rank"], 0);
    let v = json(&clonoid(&["rank", &fixture("arith.struct"), "--budget", "8", "--bound", "3"]));
    let ranks: Vec<Value> = v["ranks"].as_array().unwrap().iter().map(|r| r["rank"].clone()).collect();
    // 1, 2, 3, 4 = 2², 5, 6 = 2·3, 7, 8 = 2³; 7 = p₃ lies past the bound.
    assert_eq!(ranks, serde_json::json!([0, 1, 2, 1, 3, 2, "Unknown", 1]).as_array().unwrap().clone());
    assert_eq!(code(&clonoid(&["rank", &fixture("fca2.struct")])), 2);
}

#[test]
fn clone_gen_counts() {
    let o = clonoid(&["clone", "gen", "--domain", "2", "--gens", "and", "--max-arity", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["counts"][2]["count"], 3);
    let o = clonoid(&["clone", "gen", "--domain", "2", "--gens", "and,or,c0,c1", "--max-arity", "3", "--tables"]);
    let v = json(&o);
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 3, 6, 20]);
    assert_eq!(v["tables"][2]["tables"].as_array().unwrap().len(), 6);
    assert_eq!(code(&clonoid(&["clone", "gen", "--domain", "2", "--gens", "nand", "--max-arity", "2"])), 2);
}

#[test]
fn serial_and_parallel_runs_agree() {
    let args = ["check", &fixture("canonical.struct"), "--perm-bound", "3", "--index-bound", "3"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_clonoid")).args(args).env("CLONOID_THREADS", threads).output().unwrap()
    };
    let serial = run("1");
    assert_eq!(code(&serial), 0);
    assert_eq!(serial.stdout, run("4").stdout);
}
