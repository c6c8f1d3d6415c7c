//! End-to-end tests driving the `nstab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_nstab"));
    assert!(p.exists(), "binary not built at {p:?}");
    p = p.canonicalize().unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn nstab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_example_n3_passes() {
    let out = run(&["verify-example", "--N", "3"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("N=3 class count = 10: ok"), "{text}");
    assert!(text.contains("S and Ω tables: ok"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn validate_garbage_exits_2_with_error_object() {
    let dir = std::env::temp_dir().join("nstab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    let obj: serde_json::Value = serde_json::from_str(err.trim()).expect("machine-readable error");
    assert_eq!(obj["error"]["kind"], "parse");
}

#[test]
fn homology_of_builtin_mu_is_all_zero() {
    let out = run(&["homology", "builtin:mu-0-3", "--N", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let slots = report["slots"].as_array().unwrap();
    assert!(!slots.is_empty());
    for s in slots {
        assert_eq!(s["h_dim"], 0, "builtin mu full window must be acyclic");
    }
}

#[test]
fn outputs_are_deterministic_for_fixed_seed() {
    let a = run(&["--seed", "99", "serre-table", "--N", "3"]);
    let b = run(&["--seed", "99", "serre-table", "--N", "3"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed must give byte-identical output");
}

#[test]
fn cy_search_n4_finds_zero_four() {
    let out = run(&["cy-search", "--N", "4", "--max-l", "8", "--max-m", "8"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["m"], 0);
    assert_eq!(report["l"], 4);
}

#[test]
fn functor_pipeline_roundtrips_files() {
    // write X(1,1) as a diagram file, rotate it, reload the output
    let dir = std::env::temp_dir().join("nstab-cli-pipeline");
    std::fs::create_dir_all(&dir).unwrap();
    let diagram = dir.join("x11.json");
    // build the file through the library to keep the test self-contained
    let alg = nstable::serre::example_algebra(nstable::FieldSpec::new(7).unwrap());
    let classes = nstable::serre::example_indecomposables(&alg, 3).unwrap();
    let x11 = classes.iter().find(|c| c.label() == "X(1,1)").unwrap();
    let file = nstable::io::DiagramFile::from_diagram(x11.diagram.as_mor(), "builtin:rad2-cycle");
    std::fs::write(&diagram, serde_json::to_string_pretty(&file).unwrap()).unwrap();

    let rotated = dir.join("rotated.json");
    let out = run(&[
        "functor",
        "--apply",
        "rotate",
        diagram.to_str().unwrap(),
        "--out",
        rotated.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the emitted file re-validates
    let val = run(&["validate", rotated.to_str().unwrap()]);
    assert!(val.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&val)).unwrap();
    assert_eq!(report["kind"], "diagram");

    // expand then read the cycles back
    let complex = dir.join("expanded.json");
    let out2 = run(&[
        "expand",
        diagram.to_str().unwrap(),
        "--window",
        "6",
        "--out",
        complex.to_str().unwrap(),
    ]);
    assert!(out2.status.success(), "{}", String::from_utf8_lossy(&out2.stderr));
    let out3 = run(&["cycles", complex.to_str().unwrap()]);
    assert!(out3.status.success(), "{}", String::from_utf8_lossy(&out3.stderr));
    let cy: serde_json::Value = serde_json::from_str(&stdout(&out3)).unwrap();
    // the cycle diagram of the expansion has the dimensions of X(1,1)
    let objs = cy["objects"].as_array().unwrap();
    assert_eq!(objs.len(), 2);
    assert_eq!(objs[0]["dim"], 1);
    assert_eq!(objs[1]["dim"], 2);
}

#[test]
fn ar_quiver_emits_dot() {
    let out = run(&["ar-quiver", "--N", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("[X(0,1)]"));
    assert!(text.contains("style=dashed"));
}

#[test]
fn triangular_nakayama_compat_passes() {
    let out = run(&["triangular", "--n", "2", "--check", "nakayama-compat"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!stdout(&out).contains("FAIL"));
}
