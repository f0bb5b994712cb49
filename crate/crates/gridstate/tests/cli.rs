use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridstate"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_graph(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("gridstate-test-{}-{}", std::process::id(), name));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn gen_then_classify_cross_hatch() {
    let gen = run(&["gen", "cross-hatch", "3", "3"]);
    assert!(gen.status.success());
    let path = write_graph("ch33.json", &stdout(&gen));
    let out = run(&["classify", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("label: BOUND_ENTANGLED"), "{}", text);
}

#[test]
fn classify_json_schema() {
    let gen = run(&["gen", "bell-mixture"]);
    let path = write_graph("bell.json", &stdout(&gen));
    let out = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    for key in ["label", "cuts", "ccnr", "range", "gme", "certificates"] {
        assert!(v.get(key).is_some(), "missing key {}", key);
    }
    assert_eq!(v["label"], "SEPARABLE");
    assert!(v["gme"].is_null());
}

#[test]
fn ppt_reports_witness() {
    let gen = run(&["gen", "npt-example"]);
    let path = write_graph("npt.json", &stdout(&gen));
    let out = run(&["ppt", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("NPT"), "{}", text);
    assert!(text.contains("[1, 0]"), "{}", text);
}

#[test]
fn surgery_and_rank_on_square_loop() {
    let gen = run(&["gen", "square-loop"]);
    let path = write_graph("sq.json", &stdout(&gen));
    let rank = run(&["rank", path.to_str().unwrap()]);
    assert!(stdout(&rank).contains("rank 14"), "{}", stdout(&rank));
    assert!(stdout(&rank).contains("11 components"), "{}", stdout(&rank));
    let surg = run(&["surgery", path.to_str().unwrap()]);
    assert!(surg.status.success());
    assert!(stdout(&surg).contains("root rank 14"), "{}", stdout(&surg));
}

#[test]
fn ccnr_value_printed() {
    let gen = run(&["gen", "cross-hatch"]);
    let path = write_graph("ch.json", &stdout(&gen));
    let out = run(&["ccnr", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(entangled)"), "{}", stdout(&out));
}

#[test]
fn cut_flag_on_multipartite() {
    let gen = run(&["gen", "cross-hatch-3d"]);
    let path = write_graph("ch3d.json", &stdout(&gen));
    let out = run(&["ppt", path.to_str().unwrap(), "--cut", "1|0,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cut 1|0,2: PPT"), "{}", text);
    let all = run(&["ppt", path.to_str().unwrap()]);
    assert_eq!(stdout(&all).lines().count(), 3);
}

#[test]
fn census_totals() {
    let out = run(&["census", "--dims", "2x2", "--max-edges", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("edge_count total separable npt bound undecided"), "{}", text);
    assert!(text.contains("total 22"), "{}", text);
    let par = run(&["census", "--dims", "2x2", "--max-edges", "2", "--jobs", "4"]);
    assert_eq!(stdout(&par), text);
}

#[test]
fn export_dot_renders_positions() {
    let gen = run(&["gen", "bell-mixture"]);
    let path = write_graph("belldot.json", &stdout(&gen));
    let out = run(&["export-dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("v0_0 [pos=\"0,0!\"]"), "{}", text);
    assert!(text.contains(" -- "), "{}", text);
}

#[test]
fn exit_codes() {
    // 2: malformed file
    let bad = write_graph("bad.json", "{not json");
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // 2: validation failure
    let invalid = write_graph("invalid.json", r#"{"dims":[2,2],"edges":[[[0,0],[9,9]]]}"#);
    let out = run(&["classify", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // 3: empty-graph classification
    let empty = write_graph("empty.json", r#"{"dims":[2,2],"edges":[]}"#);
    let out = run(&["classify", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // but rank of an empty graph is fine
    let out = run(&["rank", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank 0"));
    // 2: unknown generator
    let out = run(&["gen", "no-such-graph"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_output_file_round_trips() {
    let path = std::env::temp_dir().join(format!("gridstate-test-{}-gen-o.json", std::process::id()));
    let out = run(&["gen", "x-graph", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(body.trim()).unwrap();
    assert_eq!(v["dims"], serde_json::json!([5, 5]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn stdin_is_not_supported_but_errors_cleanly() {
    // the CLI takes file paths; a missing file must exit 2 with a message
    let out = run_stdin(&["classify", "/no/such/file.json"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
