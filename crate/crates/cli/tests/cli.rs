use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equimirror"))
}

fn config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn quotient_diamond_of_cube4() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "c.json", r#"{"builtin":"cube","d":4,"group":["central"]}"#);
    let json = dir.path().join("out.json");
    let o = run(&["diamond", "--quotient", "--config", c.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("1    36    36     1"), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["x"]["quotient"][2][1], serde_json::json!([36, 1]));
    assert_eq!(v["result"]["mirror"]["quotient"][1][1], serde_json::json!([36, 1]));
}

#[test]
fn quintic_mirror_check() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "q.json", r#"{"builtin":"fermat","d":4,"group":["(12)(34)","(12345)"]}"#);
    let o = run(&["mirror-check", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: true"));
}

#[test]
fn simplex_hg() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "s.json", r#"{"builtin":"simplex","d":4}"#);
    let o = run(&["hg", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1 + t + t^2 + t^3 + t^4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = config(dir.path(), "bad.json", "{\n  \"builtin\": \"cube\",\n  \"d\": 3,\n  \"group\": [\"(15)\"]\n}");
    let o = run(&["faces", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let syntax = config(dir.path(), "syntax.json", "{\n  \"builtin\": \"cube\",\n  \"d\": 3,\n}");
    let o = run(&["faces", "--config", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let big = config(dir.path(), "big.json", r#"{"builtin":"fermat","d":4,"group":["(12)","(12345)"]}"#);
    let o = run(&["faces", "--cap-group", "60", "--config", big.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let triangle = config(dir.path(), "t.json", r#"{"vertices":[[0,0],[2,0],[0,2]]}"#);
    let o = run(&["stringy", "--config", triangle.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_phi_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "sq.json", r#"{"vertices":[[-1,-1],[1,-1],[-1,1],[1,1]],"group":[]}"#);
    let o = run(&["identities", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the cone over the square has 10 faces; the whole cone is the one with all vertices
    let faces = run(&["faces", "--config", c.to_str().unwrap()]);
    let top = stdout(&faces).lines().find(|l| l.contains("vertices [0, 1, 2, 3]")).and_then(|l| l.split_whitespace().nth(1)).unwrap().to_string();
    let o = run(&["identities", "--fault-phi", &top, "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("FAIL primal/Ehrhart reciprocity"), "{out}");
    assert!(out.contains(&format!("face {top}, class 0")), "{out}");
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "q.json", r#"{"builtin":"fermat","d":4,"group":["(12)","(12345)"],"commands":["phi","stringy","diamond","euler"]}"#);
    let mut outs = Vec::new();
    for n in ["1", "4"] {
        let j = dir.path().join(format!("r{n}.json"));
        let o = run(&["run", "--threads", n, "--config", c.to_str().unwrap(), "--json", j.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        outs.push((stdout(&o), std::fs::read(j).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn single_class_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(dir.path(), "c.json", r#"{"builtin":"cube","d":4,"group":["central"]}"#);
    let all = stdout(&run(&["stringy", "--config", c.to_str().unwrap()]));
    let one = stdout(&run(&["stringy", "--class", "1", "--config", c.to_str().unwrap()]));
    let line = one.lines().find(|l| l.trim_start().starts_with("class 1")).unwrap();
    assert!(all.contains(line));
    assert!(!one.contains("class 0 ("));
    let o = run(&["stringy", "--class", "7", "--config", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("7/7 cases passed"));
}
