use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bbncg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbncg"))
        .args(args)
        .current_dir(dir)
        .env_remove("BBNCG_THREADS")
        .output()
        .expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn spider_generate_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = bbncg(&["generate", "--family", "spider", "--k", "2", "--out", "sp"], dir.path());
    assert!(out.status.success());
    let game: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("sp/game.json")).unwrap()).unwrap();
    assert_eq!(game["n"], 7);
    assert_eq!(game["version"], "max");
    assert_eq!(game["meta"]["tool_version"], env!("CARGO_PKG_VERSION"));
    let dot = fs::read_to_string(dir.path().join("sp/graph.dot")).unwrap();
    assert_eq!(dot.matches("->").count(), 6);
    let out = bbncg(
        &["check", "--game", "sp/game.json", "--profile", "sp/profile.json", "--mode", "exact"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["is_equilibrium"], true);
}

#[test]
fn path_check_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":4,"budgets":[1,1,1,0],"version":"sum"}"#);
    write(dir.path(), "p.json", r#"{"strategies":[[2],[3],[4],[]]}"#);
    let out = bbncg(&["check", "--game", "g.json", "--profile", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    let v = json_out(&out);
    assert_eq!(v["witness"]["player"], 1);
    assert_eq!(v["witness"]["old_cost"], 6);
    assert_eq!(v["witness"]["new_cost"], 5);
}

#[test]
fn enumerate_triangle() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":3,"budgets":[1,1,1],"version":"sum"}"#);
    let out = bbncg(&["enumerate", "--game", "g.json"], dir.path());
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["equilibrium_count"], 2);
    assert_eq!(v["poa"]["price_of_anarchy"]["num"], 1);
    assert_eq!(v["poa"]["price_of_anarchy"]["den"], 1);
    assert_eq!(v["equilibria"][0]["strategies"], serde_json::json!([[2], [3], [1]]));
}

#[test]
fn caps_and_usage_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":3,"budgets":[1,1,1],"version":"sum"}"#);
    let out = bbncg(&["--profile-cap", "3", "enumerate", "--game", "g.json"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(bbncg(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(bbncg(&["check", "--game", "missing.json", "--profile", "x"], dir.path()).status.code(), Some(2));
    let out = bbncg(&["generate", "--family", "word-graph", "--t", "5", "--k", "4"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn best_response_and_cost() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":3,"budgets":[1,1,0],"version":"sum"}"#);
    write(dir.path(), "p.json", r#"{"strategies":[[2],[3],[]]}"#);
    let out = bbncg(&["cost", "--game", "g.json", "--profile", "p.json"], dir.path());
    assert_eq!(json_out(&out)["costs"], serde_json::json!([3, 2, 3]));
    let out = bbncg(&["cost", "--game", "g.json", "--profile", "p.json", "--player", "2"], dir.path());
    assert_eq!(json_out(&out)["cost"], 2);
    for mode in ["exact", "swap"] {
        let args = ["best-response", "--game", "g.json", "--profile", "p.json", "--player", "1", "--mode", mode];
        let v = json_out(&bbncg(&args, dir.path()));
        assert_eq!(v["strategy"], serde_json::json!([2]));
        assert_eq!(v["improved"], false);
    }
}

#[test]
fn dynamics_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":5,"budgets":[1,2,1,1,2],"version":"max"}"#);
    let args = ["dynamics", "--game", "g.json", "--order", "random", "--seed", "9", "--rounds", "50"];
    let a = bbncg(&args, dir.path());
    let b = bbncg(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["type"], "header");
    assert_eq!(lines[0]["meta"]["seed"], 9);
    assert_eq!(lines.last().unwrap()["type"], "footer");
    let trace = bbncg::io::parse_trace_jsonl(&text).unwrap();
    let replayed = bbncg::equilibria::replay(&trace.initial, &trace.moves).unwrap();
    assert_eq!(Some(replayed), trace.final_profile);

    let out = bbncg(&[&args[..], &["--out", "trace.jsonl"]].concat(), dir.path());
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("trace.jsonl")).unwrap(), text.replace(
        r#""output":null"#,
        r#""output":"trace.jsonl""#
    ));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":6,"budgets":[1,1,2,1,1,1],"version":"sum"}"#);
    let one = bbncg(&["--threads", "1", "enumerate", "--game", "g.json"], dir.path());
    let two = bbncg(&["--threads", "2", "enumerate", "--game", "g.json"], dir.path());
    assert_eq!(one.stdout, two.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_bbncg"))
        .args(["enumerate", "--game", "g.json"])
        .current_dir(dir.path())
        .env("BBNCG_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn analyze_checks() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "g.json", r#"{"n":7,"budgets":[1,1,1,1,1,1,1],"version":"sum"}"#);
    write(dir.path(), "c7.json", r#"{"strategies":[[2],[3],[4],[5],[6],[7],[1]]}"#);
    let out = bbncg(
        &["analyze", "--game", "g.json", "--profile", "c7.json", "--checks", "structure,expansion"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    let v = json_out(&out);
    assert_eq!(v["checks"]["structure"]["cycle_length"], 7);
    assert_eq!(v["checks"]["expansion"]["f"], serde_json::json!([3, 5, 7]));

    let out = bbncg(&["generate", "--family", "binary-tree", "--k", "3", "--out", "bt"], dir.path());
    assert!(out.status.success());
    let out = bbncg(
        &["analyze", "--game", "bt/game.json", "--profile", "bt/profile.json", "--checks", "tree-bound,connectivity"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["checks"]["tree-bound"]["diameter"], 6);
    assert_eq!(v["checks"]["connectivity"]["connectivity"], 1);
}

#[test]
fn reduce_kcenter_on_path() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.json", r#"{"n":5,"edges":[[1,2],[2,3],[3,4],[4,5]]}"#);
    let out = bbncg(&["reduce", "--kcenter", "h.json", "-k", "1", "--verify"], dir.path());
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["centers"], serde_json::json!([3]));
    assert_eq!(v["best_response"]["cost"], 3);
    assert_eq!(v["verify"]["agrees"], true);
    let out = bbncg(&["reduce", "--kcenter", "h.json", "-k", "2", "--median", "--verify"], dir.path());
    assert!(out.status.success());
    assert_eq!(json_out(&out)["objective"], 3);
}

#[test]
fn existence_family_reports_layout() {
    let dir = tempfile::tempdir().unwrap();
    let mut budgets = vec!["0"; 16];
    budgets.extend(["2", "5", "5", "5", "5", "5"]);
    let list = budgets.join(",");
    let out = bbncg(&["generate", "--family", "theorem3", "--budgets", &list, "--out", "fig"], dir.path());
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["provenance"], "existence-layered");
    assert_eq!(v["layered"]["t"], 19);
    assert_eq!(v["layered"]["s"], 3);
    let out = bbncg(&["check", "--game", "fig/game.json", "--profile", "fig/profile.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
