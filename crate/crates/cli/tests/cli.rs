use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kneser(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kneser"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const CYCLE5: &str = r#"{"n":5,"sets":[[1,2],[2,3],[3,4],[4,5],[1,5]]}"#;

#[test]
fn chi_examples_match() {
    for args in [
        &["chi", "--r", "2", "--k", "2", "--n", "5"][..],
        &["chi", "--r", "2", "--k", "2", "--n", "6", "--variant", "s-stable", "--s", "2"],
        &["chi", "--r", "3", "--k", "2", "--n", "7"],
    ] {
        let out = kneser(args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let rec = &json_of(&out)[0];
        assert_eq!(rec["status"], "match");
        assert_eq!(rec["chi"], rec["formula"]);
    }
}

#[test]
fn chi_on_a_hypergraph_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.json");
    std::fs::write(&path, r#"{"num_vertices":3,"r":2,"hyperedges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let out = kneser(&["chi", "--input", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["chi"], 3);
}

#[test]
fn grid_csv_has_frozen_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = kneser(
        &["grid-verify", "--r", "2", "--k", "2", "--n", "5..8", "--format", "csv", "--jobs", "2", "--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,k,n,s,variant,vertices,hyperedges,formula,chi,cd,kriz,status,millis");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.contains(",match,")));
    let ns: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(ns, ["5", "6", "7", "8"]);
}

#[test]
fn grid_with_no_cells_is_empty() {
    let out = kneser(&["grid-verify", "--r", "3", "--k", "3", "--n", "2..5"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), serde_json::json!([]));
}

#[test]
fn stable_grid_matches() {
    let out = kneser(&["grid-verify", "--r", "2,3", "--k", "2", "--n", "4..9", "--variant", "s-stable"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_of(&out);
    assert_eq!(recs.as_array().unwrap().len(), 10);
}

#[test]
fn defect_of_the_five_cycle() {
    let out = kneser(&["defect", "--r", "2"], Some(CYCLE5));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["cd"], 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn tcd_certificates() {
    let out = kneser(&["tcd-cert", "--r", "2", "--seed", "5"], Some(CYCLE5));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("k4.json");
    std::fs::write(&family, r#"{"n":4,"sets":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#).unwrap();
    let square = dir.path().join("square.json");
    std::fs::write(&square, r#"{"d":2,"points":[["0","0"],["1","0"],["1","1"],["0","1"]]}"#).unwrap();
    let out = kneser(
        &["tcd-cert", "--r", "2", "--input", family.to_str().unwrap(), "--config", square.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["point"], serde_json::json!(["1/2", "1/2"]));
}

#[test]
fn tverberg_on_four_line_points_is_colorful() {
    let out = kneser(&["tverberg", "--r", "2", "--d", "1", "--count", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l["colorful"] == true));
}

#[test]
fn box_and_homology_pipeline() {
    let out = kneser(&["box"], Some(r#"{"num_vertices":3,"r":2,"hyperedges":[[0,1],[1,2],[0,2]]}"#));
    assert_eq!(out.status.code(), Some(0));
    let complex = String::from_utf8(out.stdout).unwrap();
    for field in ["Q", "GF(2)", "GF(3)"] {
        let out = kneser(&["homology", "--field", field], Some(&complex));
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json_of(&out), serde_json::json!({"field": field, "betti": [0, 0, 1]}));
    }
    let out = kneser(&["box", "--bound"], Some(r#"{"num_vertices":3,"r":2,"hyperedges":[[0,1],[1,2],[0,2]]}"#));
    assert_eq!(json_of(&out)["bound"], 3);
}

#[test]
fn coloring_outputs_round_trip() {
    let out = kneser(&["coloring", "--r", "2", "--k", "2", "--n", "5"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let colors = v["colors"].as_array().unwrap();
    assert_eq!(colors.len(), 10);
    assert_eq!(colors.iter().map(|c| c.as_u64().unwrap()).max(), Some(3));
}

#[test]
fn runs_are_deterministic() {
    let a = kneser(&["tcd-cert", "--r", "3", "--seed", "9"], Some(CYCLE5));
    let b = kneser(&["tcd-cert", "--r", "3", "--seed", "9"], Some(CYCLE5));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(kneser(&["chi", "--r", "2", "--k", "3", "--n", "9", "--budget", "10"], None).status.code(), Some(3));
    assert_eq!(kneser(&["chi", "--r", "2", "--k", "2"], None).status.code(), Some(2));
    assert_eq!(kneser(&["defect", "--r", "2"], Some("not json")).status.code(), Some(2));
    assert_eq!(kneser(&["frobnicate"], None).status.code(), Some(2));
}
