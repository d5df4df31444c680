use std::process::{Command, Output};

fn ambc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn forward_and_backward_round_trip() {
    let out = ambc(&["--format", "json", "ambc-forward", "[3,7,14,2,18,4,19,8,6]"]);
    assert_eq!(out.status.code(), Some(0));
    let triple: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(triple["rho"], serde_json::json!([2, 0, 2]));
    assert_eq!(triple["p"], serde_json::json!([[2, 4, 6], [3, 7, 8], [1, 5, 9]]));

    let back = ambc(&["ambc-backward", &triple.to_string()]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(stdout(&back).trim(), "[3,7,14,2,18,4,19,8,6]");
}

#[test]
fn tables() {
    let inv = ambc(&["involutions", "2,1"]);
    assert_eq!(stdout(&inv).lines().last(), Some("count 3"));

    let lv = ambc(&["lv", "5,1,1,1,-2,-2,-2"]);
    assert_eq!(stdout(&lv).trim(), "shape 3,3,1 weight 1,-2 | 3");

    let back = ambc(&["--format", "json", "lv-inverse", "2,2,1,1,1", "0,0,1,0,-1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&back).trim()).unwrap();
    assert_eq!(v, serde_json::json!([5, 2, 1, 0, -1, -2, -5]));

    let t = ambc(&["tensor", "2,1,0", "2,0,0"]);
    assert_eq!(stdout(&t).lines().count(), 4);
    assert!(stdout(&t).contains("V(2,2,1)"));
}

#[test]
fn jmult_prints_the_worked_product() {
    let out = ambc(&["jmult", "[-1,3,10,-5,14,-3,18,7,2]", "[-6,2,-4,15,18,-2,8,22,10]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("1*[").count(), 4);
    let rev = ambc(&["jmult", "[-6,2,-4,15,18,-2,8,22,10]", "[-1,3,10,-5,14,-3,18,7,2]"]);
    assert_eq!(stdout(&rev).trim(), "0");
}

#[test]
fn self_check_passes_in_parallel() {
    let out = ambc(&["--jobs", "2", "self-check", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).trim_end().ends_with("0 failed"));
}

#[test]
fn exit_codes() {
    assert_eq!(ambc(&["ambc-forward", "[1,1]"]).status.code(), Some(2));
    assert_eq!(ambc(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ambc(&["lv", "1,2"]).status.code(), Some(2));
    assert_eq!(ambc(&["lv-inverse", "1,1", "0,1"]).status.code(), Some(2));
    let err = ambc(&["ambc-forward", "[1,1]"]);
    assert!(String::from_utf8(err.stderr).unwrap().starts_with("error"));
}
