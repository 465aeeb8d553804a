use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const GOOD: &str = r#"{"n":2,"a":1,"R_roots":["0","2"],"S_roots":["0","2"],"g_roots":["1","3/2"],"h_roots":["6/5","8/5"]}"#;
const BAD: &str = r#"{"n":2,"a":1,"R_roots":["0","2"],"S_roots":["0","2"],"g_roots":["1","1"],"h_roots":["6/5","8/5"]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn bounds_text() {
    let o = run(&["bounds", "--a", "2", "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "C=17"));
}

#[test]
fn kernel_rank_and_exit_code() {
    let o = run(&["--generate", "1,2", "kernel", "-f", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["nullity"], 8);
    assert_eq!(v["kernel"]["hermite_basis"].as_array().unwrap().len(), 8);
}

#[test]
fn validate_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", GOOD);
    let bad = write(dir.path(), "bad.json", BAD);
    let o = run(&["validate", &good]);
    assert!(o.status.success());
    let o = run(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotMorse");
    assert_eq!(err["function"], "g");
}

#[test]
fn bad_arguments_exit_one() {
    let o = run(&["monodromy", "c1"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Parse");
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", GOOD);
    for args in [
        vec!["-s", good.as_str(), "gram", "--which", "fF", "-f", "json"],
        vec![
            "-s",
            good.as_str(),
            "monodromy",
            "--value",
            "c1",
            "--which",
            "gR",
            "-f",
            "json",
        ],
        vec![
            "--generate",
            "2,2",
            "orbit",
            "--seed",
            "d3",
            "--which",
            "gR",
            "-f",
            "json",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn dynkin_dot() {
    let o = run(&["--generate", "1,2", "dynkin", "--dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("graph dynkin {"));
    assert!(s.trim_end().ends_with('}'));
}

#[test]
fn petrov_commands() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        r#"{"P":{"terms":[[0,1,"-1"],[2,1,"1"]]},"Q":{"terms":[[1,0,"1"]]}}"#,
    );
    let l = write(dir.path(), "l.json", r#"{"terms":[[2,0,"1"],[0,2,"1"]]}"#);
    let o = run(&["petrov", "decompose", &w, "--l", &l, "-f", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["reconstruction_exact"], true);
    assert_eq!(v["h"][0]["coeffs"], serde_json::json!(["1", "-1/8"]));

    let good = write(dir.path(), "good.json", GOOD);
    let o = run(&["-s", &good, "petrov", "tangent-cone", &w, "-f", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["member"], false);
}
