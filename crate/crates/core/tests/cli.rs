use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trifree-cw"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes a file in a per-process temp directory. Tests run in parallel, so
/// every test uses its own file names.
fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trifree-cw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn non_member_exits_2_with_witness() {
    let c8 = run(&["gen", "cycle", "--n", "8", "--format", "graph6"]);
    assert!(c8.status.success());
    let f = write("c8.g6", &stdout(&c8));
    let o = run(&["check", path(&f), "--class", "K3,P2+P4"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["witness"]["pattern"], "P2+P4");
    // Five consecutive vertices of C8 and the one opposite the middle of
    // them induce P1+P5.
    let o = run(&["check", path(&f), "--class", "K3,P1+P5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_then_verify() {
    let g = run(&["gen", "c5", "--class", "K3,P1+P5", "--n", "12", "--seed", "3"]);
    assert!(g.status.success());
    let gf = write("member.json", &stdout(&g));
    let check = run(&["check", path(&gf), "--class", "K3,P1+P5", "--pattern", "C5"]);
    assert!(check.status.success());
    let v: Value = serde_json::from_str(&stdout(&check)).unwrap();
    assert_eq!(v["patterns"][0]["pattern"], "C5");

    let built = run(&["cw-build", path(&gf), "--class", "K3,P1+P5", "--oracle-cap", "12"]);
    assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
    let ef = write("member-expr.json", &stdout(&built));
    let ok = run(&["cw-verify", path(&ef), path(&gf)]);
    assert!(ok.status.success());

    // The same expression does not build a different graph.
    let other = write("c5.json", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#);
    assert_eq!(run(&["cw-verify", path(&ef), path(&other)]).status.code(), Some(1));
}

#[test]
fn trace_lists_the_decomposition() {
    let g = run(&["gen", "c5", "--class", "K3,P2+P4", "--n", "10", "--seed", "1"]);
    let gf = write("p2p4.json", &stdout(&g));
    let o = run(&["cw-build", path(&gf), "--class", "K3,P2+P4", "--trace"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let primes = v["trace"]["primes"].as_array().unwrap();
    assert!(primes.iter().any(|p| p["case"] == "c5_decomposition"));
}

#[test]
fn decompose_reports_parse() {
    let g = run(&["gen", "c5", "--class", "K3,P1+P5", "--n", "11", "--seed", "5"]);
    let gf = write("decomp.json", &stdout(&g));
    let o = run(&["decompose", path(&gf), "--class", "K3,P1+P5", "--emit-json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["budget"]["deletions"], 5);
    assert!(r["edit_log"]["counts"]["deletions"].as_u64().unwrap() <= 5);

    let o = run(&["decompose", path(&gf), "--class", "K3,P1+P5", "--emit-slices"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0].as_array().unwrap().iter().all(|c| c["slices"]["slices"].is_array()));

    // Without a C5 there is nothing to decompose.
    let p4 = write("p4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    assert_eq!(run(&["decompose", path(&p4), "--class", "K3,P1+P5"]).status.code(), Some(1));
}

#[test]
fn oracle_and_enumeration() {
    let c5 = write("oracle-c5.json", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#);
    let v: Value = serde_json::from_str(&stdout(&run(&["oracle", path(&c5), "--kmax", "4"]))).unwrap();
    assert_eq!(v["cw"], 3);
    let v: Value = serde_json::from_str(&stdout(&run(&["oracle", path(&c5), "--kmax", "2"]))).unwrap();
    assert!(v["cw"].is_null());

    let all = run(&["gen", "enumerate", "--n", "4", "--format", "graph6"]);
    assert_eq!(stdout(&all).lines().count(), 11);
    let tf = run(&["gen", "enumerate", "--n", "4", "--class", "K3,P2+P4"]);
    assert_eq!(stdout(&tf).lines().count(), 7);
}

#[test]
fn labelled_embedding() {
    let poset = write("poset.json", r#"{"elements":["a","b"],"covers":[["a","b"]]}"#);
    let g = write("lg.json", r#"{"n":2,"edges":[[0,1]],"labels":{"0":"a","1":"b"}}"#);
    let h = write("lh.json", r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"0":"b","1":"b","2":"a"}}"#);
    let v: Value = serde_json::from_str(&stdout(&run(&["embed", path(&g), path(&h), "--poset", path(&poset)]))).unwrap();
    assert_eq!(v["embeds"], true);
    // Labels may only go up: the b-vertex has nowhere to go.
    let h2 = write("lh2.json", r#"{"n":3,"edges":[[0,1],[1,2]],"labels":{"0":"a","1":"a","2":"a"}}"#);
    let v: Value = serde_json::from_str(&stdout(&run(&["embed", path(&g), path(&h2), "--poset", path(&poset)]))).unwrap();
    assert_eq!(v["embeds"], false);
}
