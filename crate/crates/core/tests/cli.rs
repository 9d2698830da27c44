use std::path::PathBuf;
use std::process::{Command, Output};

fn otlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otlab"))
        .args(args)
        .env("OTLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn domain_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("domains")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["criterion", "--omega", "/nonexistent/a.json", "--lambda", "/nonexistent/b.json"],
        vec!["solve", "--example", "no-such-example"],
        vec!["solve", "--example", "four-notch"],
        vec!["jumps", "--example", "squareman", "--h", "-1"],
    ] {
        let o = otlab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    assert_ne!(otlab(&["solve", "--example", "squareman", "--n", "0"]).status.code(), Some(0));
    assert_ne!(otlab(&["solve", "--example", "squareman", "--format", "svg"]).status.code(), Some(0));
}

#[test]
fn malformed_domain_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"pieces\": [}").unwrap();
    let b = bad.display().to_string();
    assert_eq!(otlab(&["criterion", "--omega", &b, "--lambda", &b]).status.code(), Some(2));
}

#[test]
fn criterion_from_files_and_examples() {
    let o = otlab(&["criterion", "--omega", &domain_file("square.json"), "--lambda", &domain_file("dumbbell.json")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["discontinuity"]["verdict"], "DiscontinuityGuaranteed");
    assert_eq!(v["wolfson_urbas"]["verdict"], "NoDiffeomorphismGuaranteed");

    let o = otlab(&["criterion", "--example", "half-annulus", "--eps", "0.02"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["discontinuity"]["verdict"], "Inconclusive");
    assert!(v["lambda_offset"]["min_arc_value"].is_number());
}

#[test]
fn solve_outputs() {
    let o = otlab(&["solve", "--example", "half-annulus", "--n", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "i,x1,x2,y1,y2,u,v");

    let o = otlab(&["solve", "--example", "squareman", "--n", "50", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}

#[test]
fn jumps_outputs_are_deterministic() {
    let args = ["jumps", "--example", "squareman", "--n", "600", "--seed", "3"];
    let a = otlab(&args);
    let b = otlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("px,py,osc,jx1,jy1,jx2,jy2,flagged\n"));

    let o = otlab(&["jumps", "--example", "squareman", "--n", "600", "--seed", "3", "--format", "svg"]);
    let svg = stdout(&o);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    assert!(doc.descendants().filter(|n| n.has_tag_name("circle")).count() > 0);
}

#[test]
fn reproduce_writes_the_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq");
    let o = otlab(&["reproduce", "squareman", "--n", "800", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["pairing.csv", "jumps.csv", "jumps.svg", "boundary_trace.json", "manifest.json"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["example"], "squareman");
    assert!(manifest["checks"].as_array().is_some_and(|c| !c.is_empty()));

    let out = dir.path().join("dd");
    let o = otlab(&["reproduce", "deep-notch-dumbbell", "--n", "300", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("criterion.json").is_file());
}
