//! End-to-end tests driving the binary against the problem files shipped in
//! `problems/`.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-mcm"))
}

fn problem(name: &str) -> String {
    format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn mcm_check_verdicts() {
    let out = run(&["-i", &problem("fourray.json"), "--divisor", "0,-1,0,0", "mcm", "check"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: maximal Cohen-Macaulay"));

    let out = run(&["-i", &problem("fourray.json"), "mcm", "check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("NOT maximal Cohen-Macaulay"));
    assert!(text.contains("Pi = {2,4}"));
}

#[test]
fn chambers_json_has_15_strict_chambers_and_is_byte_stable() {
    let args = ["-i", &problem("fourray.json"), "--format", "json", "chambers"];
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "json output must be byte-stable");

    let v: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid json");
    let chambers = v["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 16);
    let strict = chambers
        .iter()
        .filter(|c| c["strict_nonempty"].as_bool().unwrap())
        .count();
    assert_eq!(strict, 15);
    let bounded: Vec<_> = chambers
        .iter()
        .filter(|c| c["bounded"].as_bool().unwrap() && c["semistrict_nonempty"].as_bool().unwrap())
        .collect();
    assert_eq!(bounded.len(), 1);
    assert_eq!(bounded[0]["pi"], serde_json::json!([2, 4]));
}

#[test]
fn cohomology_degree_report() {
    let out = run(&[
        "-i",
        &problem("fourray.json"),
        "--format",
        "json",
        "--verify",
        "cohomology",
        "--degree",
        "0,1,-1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sigma_m"], serde_json::json!([2, 4]));
    assert_eq!(v["dims"][2], serde_json::json!(1));
    assert_eq!(
        v["dims"].as_array().unwrap().iter().filter(|d| d.as_u64() != Some(0)).count(),
        1
    );
}

#[test]
fn enumerate_finds_three_classes() {
    let out = run(&["-i", &problem("fourray.json"), "--format", "json", "mcm", "enumerate", "--box", "3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["complete_within_box"], serde_json::json!(true));
}

#[test]
fn validation_failures_exit_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"lattice_rank": 2, "rays": [[1, 0], [-1, 0]]}}"#
    )
    .unwrap();
    let out = run(&["-i", f.path().to_str().unwrap(), "faces"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strictly convex"));

    let mut g = tempfile::NamedTempFile::new().unwrap();
    write!(g, "not json").unwrap();
    let out = run(&["-i", g.path().to_str().unwrap(), "faces"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["-i", &problem("fourray.json"), "--divisor", "0,0", "depth"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let out = run(&["-i", &problem("cube.json"), "--cap-rays", "4", "chambers"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["-i", &problem("fourray.json"), "mcm", "enumerate", "--box", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn jobs_flag_does_not_change_output() {
    let base = run(&["-i", &problem("fiveray.json"), "--format", "json", "chambers"]);
    let jobs1 = run(&["-i", &problem("fiveray.json"), "--jobs", "1", "--format", "json", "chambers"]);
    assert_eq!(base.stdout, jobs1.stdout);
    let via_env = bin()
        .env("TORIC_MCM_JOBS", "2")
        .args(["-i", &problem("fiveray.json"), "--format", "json", "chambers"])
        .output()
        .unwrap();
    assert_eq!(base.stdout, via_env.stdout);
    let v: serde_json::Value = serde_json::from_slice(&base.stdout).unwrap();
    let strict = v["chambers"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["strict_nonempty"].as_bool().unwrap())
        .count();
    assert_eq!(strict, 30);
}

#[test]
fn tilted_cube_chamber_has_full_recession() {
    let out = run(&[
        "-i",
        &problem("cube-tilted.json"),
        "--divisor",
        "1,0,-2,0,3,0,0,-1",
        "--format",
        "json",
        "chambers",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let target = v["chambers"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["pi"] == serde_json::json!([1, 3, 4, 6]))
        .unwrap();
    assert_eq!(target["recession_dim"], serde_json::json!(4));
    assert_eq!(target["cones_intersect"], serde_json::json!(false));
    assert!(target["lattice_witness"].is_array());
}

#[test]
fn singularity_and_depth_tables() {
    let out = run(&["-i", &problem("fourray.json"), "singularity"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("S_2 = { {1,2,3,4} }"));
    assert!(text.contains("S_0 = {}"));

    let out = run(&["-i", &problem("fourray.json"), "depth"]);
    assert_eq!(stdout(&out), "depth: 2\n");
}

#[test]
fn support_table_with_ideal_override() {
    let out = run(&["-i", &problem("fourray.json"), "--ideal", "1,1,0", "support"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{1,2,3,4}"));
    assert!(text.contains("{2,3}"));
    // invalid generator names its index
    let out = run(&["-i", &problem("fourray.json"), "--ideal", "0,0,-1", "support"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn arbitrary_precision_integers_round_trip() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let big = "123456789012345678901234567890";
    write!(
        f,
        r#"{{"lattice_rank": 2, "rays": [[1, 0], [0, 1]], "divisor": [-{big}, 0]}}"#
    )
    .unwrap();
    let out = run(&["-i", f.path().to_str().unwrap(), "--format", "json", "chambers"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains(big), "big integers survive the round trip");
    let _: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
}
