use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/scenarios").join(format!("{name}.ring"))
}

fn session(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], file: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_paramkit"));
    cmd.args(args).env_remove("PARAMKIT_BUDGET");
    if let Some(f) = file {
        cmd.arg(f);
    }
    cmd.output().unwrap()
}

fn json(args: &[&str], file: Option<&Path>) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all, file);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const PLANE: &str = "ring plane\nchar 0\nvars x z\nseq r = x, z\nseq bad = x, x\nseq nh = x + z^2, z\n";

#[test]
fn drtest_on_two_planes() {
    let out = run(&["drtest", "--x", "x", "--y", "y"], Some(&scenario("highpower")));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x is a system of parameters: yes"), "{text}");
    assert!(text.contains("y is a system of parameters: no"));
    assert!(text.contains("S/(x)^lim -> S/(y)^lim injective: yes"));
    assert!(!text.contains("FAILED"));

    let (code, v) = json(&["drtest", "--x", "x", "--y", "y"], Some(&scenario("highpower")));
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["x_is_sop"], true);
    assert_eq!(r["y_is_sop"], false);
    assert_eq!(r["map1_injective"], true);
    assert_eq!(r["det_a"], "a*b");
    assert_eq!(r["all_consistent"], true);
    assert_eq!(r["map2_stage_results"][0]["injective"], true);
}

#[test]
fn sopcheck_exit_codes() {
    let (code, v) = json(&["sopcheck", "--seq", "x"], Some(&scenario("highpower")));
    assert_eq!((code, &v["verdict"]), (0, &Value::Bool(true)));
    assert_eq!(v["result"]["ring_dim"], 2);
    let (code, v) = json(&["sopcheck", "--seq", "y"], Some(&scenario("highpower")));
    assert_eq!((code, &v["verdict"]), (1, &Value::Bool(false)));
    assert!(v["result"]["reason"].is_string());
}

#[test]
fn limclose_of_a_regular_sequence() {
    let f = session(PLANE);
    let (code, v) = json(&["limclose", "--seq", "r", "--tmax", "16"], Some(f.path()));
    assert_eq!(code, 0);
    assert_eq!(v["result"]["stabilized_at"], 1);
    assert_eq!(v["result"]["verified_window"], 2);
    let closure = v["result"]["closure"].as_str().unwrap();
    assert!(closure == "(x, z)" || closure == "(z, x)", "{closure}");
}

#[test]
fn json_envelope_is_stable() {
    let f = session(PLANE);
    let (_, v) = json(&["dim", "--seq", "bad"], Some(f.path()));
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["command", "result", "status", "verdict", "warnings"]);
    assert_eq!(v["command"], "dim");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["verdict"], Value::Null);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["witness"], serde_json::json!(["z"]));

    let (code, v) = json(&["length", "--seq", "bad"], Some(f.path()));
    assert_eq!(code, 2);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["command", "error", "status"]);
    assert_eq!(v["error"]["code"], "E_NOT_FINITE_LENGTH");
}

#[test]
fn errors_exit_with_two() {
    let (code, v) = json(&["nosuch"], None);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_UNKNOWN_COMMAND");

    let f = session("ring r\nchar 0\nvars x\nseq s = x +* 2\n");
    let (code, v) = json(&["sopcheck", "--seq", "s"], Some(f.path()));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_SYNTAX");

    let f = session(PLANE);
    let (code, v) = json(&["sopcheck", "--seq", "missing"], Some(f.path()));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_UNDEFINED_NAME");

    let (code, v) = json(&["sopcheck", "--seq", "r"], Some(Path::new("/nonexistent/file.ring")));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_IO");

    let out = run(&["sopcheck"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homogeneity_warning() {
    let f = session(PLANE);
    let out = run(&["sopcheck", "--seq", "nh"], Some(f.path()));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WARNING: sequence `nh` is not homogeneous"));
    let out = run(&["--no-homogeneity-warning", "sopcheck", "--seq", "nh"], Some(f.path()));
    assert!(out.stderr.is_empty());
    let (_, v) = json(&["sopcheck", "--seq", "nh"], Some(f.path()));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let f = session("ring r\nchar 0\nvars x z\nseq r = x, z\n");
    let out = run(&["sopcheck", "--seq", "r"], Some(f.path()));
    assert!(out.stderr.is_empty());
}

#[test]
fn budget_from_environment() {
    let path = scenario("highpower");
    let out = Command::new(env!("CARGO_BIN_EXE_paramkit"))
        .args(["--json", "limclose", "--seq", "x"])
        .arg(&path)
        .env("PARAMKIT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_BUDGET_EXCEEDED");
    let out = Command::new(env!("CARGO_BIN_EXE_paramkit"))
        .args(["--json", "sopcheck", "--seq", "x"])
        .arg(&path)
        .env("PARAMKIT_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_USAGE");
}

#[test]
fn seeded_commands_are_reproducible() {
    let path = scenario("xz-noncm");
    let a = run(&["--json", "cmprobe", "--trials", "5"], Some(&path));
    let b = run(&["--json", "--seed", "0", "cmprobe", "--trials", "5"], Some(&path));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["verdict"]["verdict"], "NotCm");
    assert_eq!(v["result"]["verdict"]["witness"], "z");
}

#[test]
fn every_command_runs() {
    let hp = scenario("highpower");
    let nodal = session("ring nodal\nchar 0\nvars a b\nquotient a*b\nseq x = a + b\nseq m = a, b\n");
    let cases: Vec<(Vec<&str>, &Path, i32)> = vec![
        (vec!["mc", "--seq", "x"], &hp, 0),
        (vec!["map5", "--x", "x", "--y", "y"], &hp, 1),
        (vec!["map1", "--x", "x", "--y", "y", "--matrix", "D"], &hp, 0),
        (vec!["map2", "--x", "x", "--y", "y", "--stages", "2"], &hp, 1),
        (vec!["koszul", "--seq", "x"], &hp, 0),
        (vec!["lift", "--x", "x", "--y", "y"], &hp, 0),
        (vec!["colon", "--seq", "y", "--by", "a"], &hp, 0),
        (vec!["intersect", "--left", "x", "--right", "y"], &hp, 0),
        (vec!["dim"], &hp, 0),
        (vec!["socle", "--seq", "x"], &hp, 0),
        (vec!["regseq", "--seq", "x"], &hp, 1),
        (vec!["zerocolon", "--u", "a", "--trials", "5"], nodal.path(), 1),
        (vec!["length", "--seq", "m"], nodal.path(), 0),
    ];
    for (args, path, expected) in cases {
        let (code, v) = json(&args, Some(path));
        assert_eq!(code, expected, "{args:?}: {v}");
        assert_eq!(v["status"], "ok", "{args:?}");
    }
    let (_, v) = json(&["colon", "--seq", "y", "--by", "a"], Some(&hp));
    assert_eq!(v["result"]["ideal"], "(d, c, a, b^2)");
    let (_, v) = json(&["length", "--seq", "m"], Some(nodal.path()));
    assert_eq!(v["result"]["length"], 1);
}

#[test]
fn detcor_and_frobcert_on_heitmann() {
    let f = session(
        "ring h\nchar 2\nvars x u\nquotient ((x+u)*u)^3, x*(x+u)^2*u^2\nseq x = x\nseq y = x^2\n\
         matrix A = [[x]]\nmatrix B = [[x + u^2*(x+u)^2]]\n",
    );
    let (code, v) = json(&["detcor", "--x", "x", "--y", "y", "--a", "A", "--b", "B"], Some(f.path()));
    assert_eq!((code, &v["result"]["holds"]), (0, &Value::Bool(true)));
    let (code, v) = json(
        &["frobcert", "--c", "1", "--z", "x*u", "--x", "x", "--y", "y", "--matrix", "A", "--q", "1,2,4"],
        Some(f.path()),
    );
    assert_eq!(code, 0, "{v}");
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["conclusion"] == true));
    let (code, v) = json(&["frobcert", "--c", "1", "--z", "x", "--x", "x", "--y", "y", "--q", "6"], Some(f.path()));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_NOT_PRIME_POWER");
}

#[test]
fn scenarios_from_the_command_line() {
    for name in ["heitmann", "highpower", "highpower-f2", "xz-noncm", "nodal"] {
        let (code, v) = json(&["scenario", name], None);
        assert_eq!(code, 0, "{name}: {v}");
        assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
    let (code, _) = json(&["scenario", "--file"], Some(&scenario("nodal")));
    assert_eq!(code, 0);
    let failing = session("ring r\nchar 0\nvars x z\nseq s = x, z\nexpect sopcheck s = false # [TRIVIAL]\n");
    let (code, v) = json(&["scenario", "--file"], Some(failing.path()));
    assert_eq!(code, 1);
    assert_eq!(v["result"]["checks"][0]["actual"], "true");
    let (code, v) = json(&["scenario", "unknown"], None);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "E_UNKNOWN_SCENARIO");
}
