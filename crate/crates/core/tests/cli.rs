use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const LARGE_NU: &str = r#"{"p":5,"q":4,"blocks":[
  {"shape":"par_up","r":1,"s":1,"gamma":"1"},
  {"shape":"rect","r":1,"s":1,"gamma":"1/2"},
  {"shape":"trap_top","r":2,"s":1,"gamma":"0"},
  {"shape":"rect","r":1,"s":1,"gamma":"-1/2"}],
  "nu":[["0"],["1/2"],["0"],["7/2"]]}"#;

fn upq(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_upq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

#[test]
fn analyze_file_and_stdin_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("req.json");
    std::fs::write(&path, LARGE_NU).unwrap();
    let a = upq(&["analyze", path.to_str().unwrap()], "");
    let b = upq(&["analyze"], LARGE_NU);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a.stdout);
    assert_eq!(r["verdict"], "NonUnitaryByFPP");
    assert_eq!(r["inf_char"], serde_json::json!(["3", "1", "1", "1", "0", "0", "0", "0", "-4"]));
}

#[test]
fn analyze_wrapped_and_ktype_requests() {
    let wrapped = format!(r#"{{"theta_datum": {LARGE_NU}}}"#);
    let ktype = r#"{"p":5,"q":4,"mu":"0,0,0,0,0|2,1,0,-1","nu":[["0"],["1/2"],["0"],["7/2"]]}"#;
    let a = upq(&["analyze"], &wrapped);
    let b = upq(&["analyze"], LARGE_NU);
    assert_eq!(a.stdout, b.stdout);
    let c = upq(&["analyze"], ktype);
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    assert_eq!(json(&c.stdout)["lowest_k_type"], json(&b.stdout)["lowest_k_type"]);
}

#[test]
fn diagram_follows_report() {
    let out = upq(&["analyze", "--diagram"], LARGE_NU);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "nu=0 | nu=1/2 | nu=0 | nu=7/2");
}

#[test]
fn exit_codes() {
    let parse = upq(&["analyze"], "{not json");
    assert_eq!(parse.status.code(), Some(2));
    assert_eq!(json(&parse.stderr)["error"], "parse");

    let invalid =
        upq(&["analyze"], r#"{"p":1,"q":1,"blocks":[{"shape":"rect","r":1,"s":1,"gamma":"1/2"}],"nu":[["0"]]}"#);
    assert_eq!(invalid.status.code(), Some(3));
    assert_eq!(json(&invalid.stderr)["error"], "validation");

    let guard = upq(&["enumerate", "--p", "5", "--q", "4", "--bound", "1"], "");
    assert_eq!(guard.status.code(), Some(4));
    assert_eq!(json(&guard.stderr)["error"], "guard");

    let both = format!(r#"{{"theta_datum": {LARGE_NU}, "p":1, "q":1, "mu":"0|0"}}"#);
    assert_eq!(upq(&["analyze"], &both).status.code(), Some(3));
}

#[test]
fn from_mu_nu_mismatch_echoes_sizes() {
    let out = upq(&["from-mu", "--p", "7", "--q", "4", "--mu", "2,2,2,2,2,2,2|0,-3,-3,-4", "--nu", "1"], "");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(2,2)"));
}

#[test]
fn from_mu_then_analyze_gives_same_report() {
    let out = upq(&["from-mu", "--p", "6", "--q", "3", "--mu", "-1,-1,-1,-1,-1,-1|3,3,1"], "");
    assert!(out.status.success());
    let v = json(&out.stdout);
    assert_eq!(v["theta_datum"]["blocks"][0]["shape"], "par_up");
    let again = upq(&["analyze"], &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&again.stdout), v["report"]);

    let single = json(&upq(&["from-mu", "--p", "1", "--q", "1", "--mu", "0|0"], "").stdout);
    assert_eq!(single["theta_datum"]["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(single["theta_datum"]["blocks"][0]["shape"], "rect");
}

#[test]
fn enumerate_streams_lines() {
    let out = upq(&["enumerate", "--p", "1", "--q", "0", "--bound", "3/2"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["datum"]["blocks"][0]["shape"], "trap_top");
        assert!(v["report"]["verdict"].is_string());
    }
    let empty = upq(&["enumerate", "--p", "2", "--q", "2", "--bound", "-1"], "");
    assert!(empty.status.success() && empty.stdout.is_empty());
}

#[test]
fn batch_keeps_order_and_survives_bad_lines() {
    let input = format!("{}\n{{oops\n{}\n", LARGE_NU.replace('\n', ""), r#"{"p":1,"q":1,"mu":"0|0"}"#);
    let out = upq(&["analyze", "--batch"], &input);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["verdict"], "NonUnitaryByFPP");
    assert_eq!(lines[1]["error"], "parse");
    assert_eq!(lines[1]["line"], 2);
    assert!(lines[2]["verdict"].is_string());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes_and_filters() {
    let all = upq(&["selftest"], "");
    assert!(all.status.success(), "{}", String::from_utf8_lossy(&all.stderr));
    let one = upq(&["selftest", "--filter", "u54-large-nu"], "");
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("ok   u54-large-nu"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn corrupted_golden_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let good = include_str!("../golden/u63-parallelograms.json");
    std::fs::write(dir.path().join("u63-parallelograms.json"), good).unwrap();
    std::fs::write(dir.path().join("broken.json"), good.replacen("\"par_up\"", "\"par_down\"", 1)).unwrap();
    let out = upq(&["selftest", "--golden-dir", dir.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));

    std::fs::write(dir.path().join("broken.json"), "{").unwrap();
    let out = upq(&["selftest", "--golden-dir", dir.path().to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = upq_core::cli::run(["upq", "analyze"], &mut LARGE_NU.as_bytes(), &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, upq(&["analyze"], LARGE_NU).stdout);
}
