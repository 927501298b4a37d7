use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_billiards")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn unfold_octagon_triangle_writes_sixteen_faces_and_a_figure() {
    let dir = tempfile::tempdir().unwrap();
    let (out, svg) = (dir.path().join("s.json"), dir.path().join("s.svg"));
    let o = run(&["unfold", "--triangle", "1/2,1/8,3/8", "--out", path(&out), "--svg", path(&svg)]);
    assert!(o.status.success());
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s["faces"].as_array().unwrap().len(), 16);
    assert_eq!(s["genus"]["g"], 2);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    // the dump reads back
    let a = json_out(&["analyze", "--in", path(&out)]);
    assert_eq!(a["g"], 2);
    assert_eq!(a["faces"], 16);
}

#[test]
fn analyze_square_gives_a_torus() {
    let dir = tempfile::tempdir().unwrap();
    let torus = dir.path().join("torus.json");
    std::fs::write(
        &torus,
        r#"{"edges":[{"direction":"0","length":"1"},{"direction":"1/2","length":"1"},
            {"direction":"1","length":"1"},{"direction":"3/2","length":"1"}]}"#,
    )
    .unwrap();
    let a = json_out(&["analyze", "--in", path(&torus)]);
    assert_eq!(a["g"], 1);
    assert_eq!(a["chi"], 0);
}

#[test]
fn nonperiodic_test_on_twelfths_vertex_b() {
    let r = json_out(&["nonperiodic-test", "--family", "5a", "--point", "b", "--direction", "0"]);
    assert_eq!(r["status"], "non_periodic");
    let third = r["classes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["ratio_squared"]["coeffs"][0] == "1/3" && c["ratio_squared"]["conductor"] == 1);
    assert!(third, "{r}");
}

#[test]
fn cylinders_report_exact_values_with_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let r = json_out(&["cylinders", "--triangle", "1/2,1/8,3/8", "--direction", "0", "--svg", path(&svg)]);
    let cyl = r["cylinders"].as_array().unwrap();
    assert!(!cyl.is_empty());
    assert!(cyl[0]["height"]["coeffs"].is_array());
    assert!(cyl[0]["height"]["decimal"].as_str().unwrap().len() > 50);
    assert!(svg.exists());
}

#[test]
fn check_cover_reads_a_tiling_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    std::fs::write(&t, r#"{"base":{"triangle":["1/2","1/5","3/10"]},"words":[[],[2],[0],[0,2]]}"#).unwrap();
    let r = json_out(&["check-cover", "--in", path(&t), "--base-lattice"]);
    assert_eq!(r["analysis"]["degree"], 2);
    assert_eq!(r["analysis"]["branch_locus"].as_array().unwrap().len(), 2);
    assert_eq!(r["verdict"]["appropriate"], "no");
    assert_eq!(r["verdict"]["reasons"][0]["reason"], "several_branch_points");
}

#[test]
fn catalog_lists_and_shows_entries() {
    let all = json_out(&["catalog"]);
    assert_eq!(all.as_array().unwrap().len(), 13);
    let e = json_out(&["catalog", "--family", "5b"]);
    assert_eq!(e["g"], 4);
}

#[test]
fn search_reports_none_found_for_item_seven() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["search-appropriate", "--family", "7", "--max-copies", "8", "--class", "1", "--out", path(&out)]);
    assert!(o.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["outcome"], "none_found");
}

#[test]
fn search_draws_rejected_tilings() {
    let dir = tempfile::tempdir().unwrap();
    let svgs = dir.path().join("svg");
    let r = json_out(&["search-appropriate", "--family", "2", "--n", "5", "--max-copies", "6", "--svg-dir", path(&svgs)]);
    assert_eq!(r["outcome"], "none_found");
    let names: Vec<String> =
        std::fs::read_dir(&svgs).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("two_branch_points")), "{names:?}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["unfold"]).status.code(), Some(2));
    assert_eq!(run(&["unfold", "--triangle", "1/2,1/2"]).status.code(), Some(2));
    assert_eq!(run(&["search-appropriate", "--family", "zz"]).status.code(), Some(2));
    assert_eq!(run(&["search-appropriate", "--family", "7", "--class", "3"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_json_on_stderr() {
    let o = run(&["unfold", "--triangle", "1/2,1/2,1/2"]);
    assert_eq!(o.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "polygon");
    let o = run(&["catalog", "--family", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "catalog");
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
