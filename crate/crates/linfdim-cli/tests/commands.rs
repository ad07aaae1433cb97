use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn linfdim(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linfdim"))
        .args(args)
        .env_remove("LINFDIM_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = linfdim(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    String::from_utf8(out.stdout).unwrap()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("linfdim-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const C5: &str = r#"{"vertices": ["a", "b", "c", "d", "e"],
  "edges": [{"u": "a", "v": "b"}, {"u": "b", "v": "c"}, {"u": "c", "v": "d"}, {"u": "d", "v": "e"}, {"u": "e", "v": "a"}]}"#;

#[test]
fn gen_pipes_into_dim() {
    let s2 = ok(&["gen", "S", "2", "--certificate"], None);
    let report = json(&ok(&["dim"], Some(&s2)));
    assert_eq!(report["command"], "dim");
    assert_eq!(report["results"]["dimension"], 3);
    assert_eq!(report["threads"], 1);
    assert!(report.get("timings_ms").is_none());
    let k4 = ok(&["gen", "complete", "4"], None);
    let unit = k4.replace("\"v\": \"v2\"", "\"v\": \"v2\", \"d\": 1")
        .replace("\"v\": \"v3\"", "\"v\": \"v3\", \"d\": 1")
        .replace("\"v\": \"v4\"", "\"v\": \"v4\", \"d\": 1");
    assert_eq!(json(&ok(&["dim", "-"], Some(&unit)))["results"]["dimension"], 2);
}

#[test]
fn reports_are_reproducible() {
    let s2 = ok(&["gen", "S", "2", "--certificate"], None);
    let path = write_temp("s2.json", &s2);
    let a = ok(&["dim", &path, "--seed", "7"], None);
    let b = ok(&["dim", &path, "--seed", "7"], None);
    assert_eq!(a, b);
    assert_eq!(json(&a)["seed"], 7);
    assert_eq!(ok(&["dim"], Some(&s2)), ok(&["dim", &path], None).replace("\"seed\": 7,\n", ""));
    let t = json(&ok(&["--timings", "dim", &path], None));
    assert!(t["timings_ms"]["total"].is_number());
    assert_eq!(json(&ok(&["--threads", "3", "certify", "P", "2"], None))["threads"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(linfdim(&["dim"], Some("{not json")).status.code(), Some(1));
    assert_eq!(linfdim(&["dim"], Some(C5)).status.code(), Some(1));
    assert_eq!(linfdim(&["gen", "nope", "3"], None).status.code(), Some(1));
    assert_eq!(linfdim(&["frobnicate"], None).status.code(), Some(1));
    let bad = r#"{"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "d": 5}, {"u": "b", "v": "c", "d": 1}, {"u": "a", "v": "c", "d": 1}]}"#;
    let out = linfdim(&["dim"], Some(bad));
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(linfdim(&["tools", "check-flat", "--arcs", "a>b"], Some(bad)).status.code(), Some(1));
    assert_eq!(linfdim(&["tools", "check-flat", "--no-validate", "--arcs", "a>b"], Some(bad)).status.code(), Some(0));
    let s3 = ok(&["gen", "S", "3", "--certificate"], None);
    let out = linfdim(&["dim", "--max-nodes", "2"], Some(&s3));
    assert_eq!(out.status.code(), Some(2));
    let r = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r["results"]["status"], "budget_exhausted");
    let iv = r["results"]["interval"].as_array().unwrap();
    assert!(iv[0].as_u64().unwrap() <= 4 && 4 <= iv[1].as_u64().unwrap());
    assert_eq!(linfdim(&["certify", "S", "11"], None).status.code(), Some(2));
    assert_eq!(linfdim(&["certify", "wheel", "4"], None).status.code(), Some(1));
    assert_eq!(linfdim(&["--help"], None).status.code(), Some(0));
}

#[test]
fn certify_statement() {
    let r = json(&ok(&["certify", "F", "3"], None));
    assert_eq!(r["results"]["statement"], "f∞ ≥ 4 certified");
    assert_eq!(r["results"]["pairs_checked"], 6);
}

#[test]
fn spqr_of_two_k4s() {
    let text = r#"{"vertices": ["x", "y", "a1", "a2", "b1", "b2"], "edges": [
      {"u": "x", "v": "y"}, {"u": "x", "v": "a1"}, {"u": "x", "v": "a2"}, {"u": "y", "v": "a1"}, {"u": "y", "v": "a2"},
      {"u": "a1", "v": "a2"}, {"u": "x", "v": "b1"}, {"u": "x", "v": "b2"}, {"u": "y", "v": "b1"}, {"u": "y", "v": "b2"},
      {"u": "b1", "v": "b2"}]}"#;
    let r = json(&ok(&["tools", "spqr"], Some(text)));
    let mut kinds: Vec<&str> = r["results"]["kinds"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    kinds.sort();
    assert_eq!(kinds, ["P", "R", "R"]);
    assert_eq!(r["results"]["tree_edges"].as_array().unwrap().len(), 2);
    let c = json(&ok(&["tools", "contract-spqr"], Some(text)));
    assert_eq!(c["results"]["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn bounds_at_one() {
    let out = ok(&["tools", "bounds", "--k", "1"], None);
    let r = json(&out);
    let entries = r["results"]["entries"].as_array().unwrap();
    let get = |n: &str| entries.iter().find(|e| e["name"] == n).unwrap()["value"].clone();
    assert_eq!(get("ladder"), "19");
    assert_eq!(get("degree_bound"), "24");
}

#[test]
fn gadget_of_c5() {
    let gadget = ok(&["tools", "gadget-chi"], Some(C5));
    assert_eq!(json(&gadget)["metadata"]["chromatic_number"], 3);
    assert_eq!(json(&ok(&["dim"], Some(&gadget)))["results"]["dimension"], 3);
}

#[test]
fn reductions_and_blocks() {
    let w6 = ok(&["gen", "wheel", "6"], None);
    let r = json(&ok(&["tools", "fan-reduce"], Some(&w6)));
    assert_eq!((r["results"]["vertices"].as_u64(), r["results"]["edges"].as_u64()), (Some(5), Some(8)));
    let again = serde_json::to_string(&r["results"]["graph"]).unwrap();
    assert_eq!(json(&ok(&["tools", "fan-reduce"], Some(&again)))["results"]["reductions"], Value::Array(vec![]));
    let path = ok(&["gen", "path", "4"], None);
    let b = json(&ok(&["tools", "blocks"], Some(&path)));
    assert_eq!(b["results"]["blocks"].as_array().unwrap().len(), 3);
    assert_eq!(b["results"]["cut_vertices"].as_array().unwrap().len(), 2);
    assert_eq!(linfdim(&["tools", "h-reduce", "--h", "3"], Some(&path)).status.code(), Some(1));
}

#[test]
fn flatness_and_embedding() {
    let tri = r#"{"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "d": 1}, {"u": "b", "v": "c", "d": 1}, {"u": "a", "v": "c", "d": 2}]}"#;
    let r = json(&ok(&["tools", "check-flat", "--arcs", "a>b,b>c,a>c"], Some(tri)));
    assert_eq!(r["results"]["flat"], true);
    let unit = tri.replace("\"d\": 2", "\"d\": 1");
    let r = json(&ok(&["tools", "check-flat", "--arcs", "a>b,b>c"], Some(&unit)));
    assert_eq!(r["results"]["flat"], false);
    assert_eq!(linfdim(&["tools", "check-flat", "--arcs", "a>z"], Some(tri)).status.code(), Some(1));
    let out_path = std::env::temp_dir().join(format!("linfdim-{}-coords.json", std::process::id()));
    let e = json(&ok(&["tools", "embed", "--out", out_path.to_str().unwrap()], Some(tri)));
    assert_eq!(e["results"]["dimension"], 1);
    assert!(json(&std::fs::read_to_string(&out_path).unwrap())["coordinates"]["a"].is_array());
}

#[test]
fn euclid_commands() {
    let r = json(&ok(&["tools", "euclid-tri", "--r", "4"], None));
    assert_eq!(r["results"]["dimension"], 4);
    assert!(r["results"]["worst_error"].as_f64().unwrap() < 1e-9);
    let m = json(&ok(&["tools", "model-tri-square", "--k", "2"], None));
    assert_eq!(m["results"]["pattern_vertices"], 10);
    let g = json(&ok(&["tools", "euclid-tri", "--r", "3", "--emit-graph"], None));
    assert_eq!(g["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn dot_output() {
    let path = std::env::temp_dir().join(format!("linfdim-{}-s2.dot", std::process::id()));
    ok(&["--dot", path.to_str().unwrap(), "gen", "S", "2", "--certificate"], None);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches("color=red").count(), 3);
}
