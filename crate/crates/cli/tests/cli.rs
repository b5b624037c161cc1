use std::path::PathBuf;
use std::process::{Command, Output};

use entrocone::analysis::{bc_marginal_cone, full_marginal_outer_cone, observed_outer_cone, verify_line_cone, Engine, PipelineOptions};
use entrocone::causal_model::{build_line_structure, resolve_structure};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn entrocone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entrocone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn outer_matches_library_report() {
    let o = entrocone(&["outer", "pn:4"]);
    assert_eq!(o.status.code(), Some(0));
    let lib = observed_outer_cone(&build_line_structure(4).unwrap()).unwrap();
    assert_eq!(stdout(&o), lib.to_text());
    assert!(stdout(&o).contains("  (i)     1 1 1 1 2 2 2 2 2 2 3 3 3 3 3\n"));
    assert!(stdout(&o).contains("  (x)     1 1 0 0 1 1 1 1 1 0 1 1 1 1 1\n"));

    let j = entrocone(&["outer", "pn:4", "--format", "json"]);
    assert_eq!(stdout(&j), lib.to_json() + "\n");
}

#[test]
fn verify_reports_tight() {
    let o = entrocone(&["verify", "pn:4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("extremal rays (10):"));
    assert!(text.contains("verdict: tight"));
    assert_eq!(text.matches("<- D(").count(), 10);
    assert_eq!(text, verify_line_cone(4, 1e-9).unwrap().to_text());
}

#[test]
fn verify_outer_only_exits_2() {
    // a negative tolerance lets no witness snap onto a ray
    let o = entrocone(&["verify", "pn:3", "--tolerance=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: outer-only"));
}

#[test]
fn verify_rejects_other_structures() {
    let o = entrocone(&["verify", "bell"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pn:<n>"));
}

#[test]
fn marginalize_structure_file() {
    let path = data("bell.json");
    let o = entrocone(&["marginalize", &path, "--engine", "fm"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g = resolve_structure(&path).unwrap();
    let opts = PipelineOptions { engine: Engine::Fm, ..Default::default() };
    assert_eq!(stdout(&o), full_marginal_outer_cone(&g, &opts).unwrap().to_text());
    assert!(stdout(&o).contains("extremal rays (10):"));
}

#[test]
fn marginalize_guard_names_override_flag() {
    let o = entrocone(&["marginalize", "pn:4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--max-nodes"));
    let ok = entrocone(&["marginalize", "pn:3", "--max-nodes", "5"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn bc_cone_three() {
    let o = entrocone(&["bc-cone", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("extremal rays (20):"));
    assert!(text.contains("non-shannon (in)equalities: 36"));
    assert_eq!(text, bc_marginal_cone(3, Engine::Dd).unwrap().to_text());
    assert_eq!(entrocone(&["bc-cone", "5"]).status.code(), Some(1));
}

#[test]
fn bc_eval_values() {
    let o = entrocone(&["bc-eval", &data("deterministic_tables.json")]);
    assert_eq!(stdout(&o), "0\n");
    let o = entrocone(&["bc-eval", &data("three_bit_tables.json")]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad_tables = dir.path().join("t.json");
    std::fs::write(&bad_tables, r#"{"x_size":2,"y_size":2,"tables":{"00":[1,0,0,0]}}"#).unwrap();
    let o = entrocone(&["bc-eval", bad_tables.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tables.01"), "{}", stderr(&o));

    let bad_cone = dir.path().join("c.json");
    std::fs::write(&bad_cone, r#"{"dimension":3,"inequalities":[[1,0,0],[1,0]]}"#).unwrap();
    let o = entrocone(&["rays", bad_cone.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inequalities[1]"));
}

#[test]
fn entropy_of_model_file() {
    let o = entrocone(&["entropy", &data("copy_model.json"), "--observed"]);
    assert_eq!(stdout(&o), "H(X1) = 1\nH(X2) = 1\nH(X1X2) = 1\n");
    let all = entrocone(&["entropy", &data("copy_model.json")]);
    assert_eq!(stdout(&all).lines().count(), 7);
}

#[test]
fn cone_file_conversions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    std::fs::write(&h, r#"{"dimension":3,"inequalities":[[1,0,0],[0,1,0],[0,0,1],[1,1,-1]]}"#).unwrap();
    let v = entrocone(&["rays", h.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v.status.code(), Some(0));
    let vpath = dir.path().join("v.json");
    std::fs::write(&vpath, v.stdout).unwrap();
    let back = entrocone(&["facets", vpath.to_str().unwrap()]);
    let text = stdout(&back);
    assert!(text.starts_with("DIM = 3"));
    assert!(text.contains("+x1 +x2 -x3 >= 0"));
    assert_eq!(text.matches(">= 0").count(), 4);
}

#[test]
fn output_is_deterministic() {
    let a = entrocone(&["bc-cone", "3", "--format", "json"]);
    let b = entrocone(&["bc-cone", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_flags_and_thread_cap() {
    assert_eq!(entrocone(&["outer", "pn:3", "--bogus"]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_entrocone"))
        .args(["verify", "pn:5"])
        .env("ENTROCONE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_entrocone"))
        .args(["verify", "pn:5"])
        .env("ENTROCONE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ENTROCONE_THREADS"));
}

#[test]
fn run_is_a_thin_adapter() {
    let (out, diag) = entrocone_cli::run(["entrocone", "outer", "pn:3", "--format", "json"]);
    assert_eq!(out.status, 0);
    assert!(diag.is_empty());
    let lib = observed_outer_cone(&build_line_structure(3).unwrap()).unwrap();
    assert_eq!(out.output, lib.to_json() + "\n");
}
