use std::process::{Command, Output};

use serde_json::Value;

fn ordkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args(args)
        .env_remove("ORDKIT_STEP_CAP")
        .env_remove("ORDKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ordkit(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn braid_sign_of_a_negative_word() {
    let v = json(&[
        "braid",
        "sign",
        "--order",
        "dehornoy:b3",
        "--element",
        "s1^-1 s2^4",
    ]);
    assert_eq!(v["sign"], "-");
    assert_eq!(v["witness_index"], 1);
    assert_eq!(v["schema_version"], 1);
    assert!(v["reduced"].is_string());
}

#[test]
fn dd_sign_of_s2_is_negative() {
    let v = json(&["order", "sign", "--order", "dd:b3", "--element", "s2"]);
    assert_eq!(v["sign"], "-");
}

#[test]
fn dehornoy_and_dd_differ_at_radius_one() {
    let v = json(&[
        "space",
        "distance",
        "--a",
        "dehornoy:b3",
        "--b",
        "dd:b3",
        "--max-radius",
        "5",
    ]);
    assert_eq!(v["n_prime"], 0);
    assert_eq!(v["distance"], "1");
}

#[test]
fn braid_equal_and_rewrite() {
    let v = json(&[
        "braid",
        "equal",
        "--strands",
        "3",
        "--a",
        "s1 s2 s1",
        "--b",
        "s2 s1 s2",
    ]);
    assert_eq!(v["equal"], true);
    let v = json(&["braid", "rewrite", "--element", "s1^2"]);
    assert_eq!(v["verified"], true);
    assert!(!v["cone_word"].as_str().unwrap().contains('-'));
}

#[test]
fn exit_codes() {
    let usage = ordkit(&["order", "sign", "--order", "nonsense", "--element", "s1"]);
    assert_eq!(usage.status.code(), Some(2));
    let malformed = ordkit(&["order", "sign", "--order", "dehornoy:b3", "--element", "s9"]);
    assert_eq!(malformed.status.code(), Some(2));
    let unknown = ordkit(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    let negative = ordkit(&[
        "braid",
        "sign",
        "--order",
        "dehornoy:b3",
        "--element",
        "s1",
        "--expect",
        "-",
    ]);
    assert_eq!(negative.status.code(), Some(1));
    let met = ordkit(&[
        "braid",
        "sign",
        "--order",
        "dehornoy:b3",
        "--element",
        "s1",
        "--expect",
        "+",
    ]);
    assert_eq!(met.status.code(), Some(0));
    let capped = Command::new(env!("CARGO_BIN_EXE_ordkit"))
        .args([
            "braid",
            "sign",
            "--order",
            "dehornoy:b3",
            "--element",
            "s1 s2 s1 s2^-1 s1^-1 s2^-1",
        ])
        .env("ORDKIT_STEP_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn realize_then_search_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.json");
    let t = table.to_str().unwrap();
    json(&[
        "realize",
        "--order",
        "dehornoy:b3",
        "--count",
        "120",
        "--out",
        t,
    ]);
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(stored["enumeration"].as_array().unwrap().len(), 120);
    assert_eq!(stored["t"]["id"], "0");
    let v = json(&["crossings", "--table", t]);
    assert_eq!(v["found"], true);
    assert_eq!(v["rechecked"], true);

    json(&[
        "realize", "--order", "zn:lex:2", "--count", "60", "--out", t,
    ]);
    let v = json(&["crossings", "--table", t, "--expect", "none"]);
    assert_eq!(v["found"], false);
}

#[test]
fn holder_csv_series() {
    let out = ordkit(&[
        "holder",
        "--order",
        "zn:slope:1,sqrt2",
        "--f",
        "(1,0)",
        "--g",
        "(0,1)",
        "--pmax",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,q,ratio");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[10], "10,14,7/5");
}

#[test]
fn space_reports() {
    let v = json(&[
        "space",
        "extend-count",
        "--group",
        "klein",
        "--radius",
        "4",
        "--depth",
        "6",
    ]);
    assert_eq!(v["count"], 4);
    assert_eq!(v["status"], "consistent");
    let v = json(&[
        "space",
        "probe",
        "--order",
        "zn:slope:1,sqrt2",
        "--radius",
        "4",
    ]);
    assert_eq!(v["outcome"], "realized");
    let v = json(&[
        "space",
        "converge",
        "--order",
        "dehornoy:b3",
        "--conjugator-radius",
        "5",
        "--target-radius",
        "2",
    ]);
    assert_eq!(v["reached_target"], true);
    assert_eq!(v["verified"], true);
    let v = json(&["space", "soul", "--strands", "3", "--ordering", "dehornoy"]);
    assert_eq!(v["soul"], "parabolic=2");
    assert_eq!(v["verified"], true);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# defaults\nformat = text\nmax_radius = 3\n").unwrap();
    let out = ordkit(&[
        "space",
        "distance",
        "--a",
        "dd:b3",
        "--b",
        "dd:b3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("distance: <= e^-3"), "{text}");
    std::fs::write(&cfg, "format\n").unwrap();
    let bad = ordkit(&[
        "space",
        "distance",
        "--a",
        "dd:b3",
        "--b",
        "dd:b3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let args = [
        "space",
        "converge",
        "--order",
        "dehornoy:b3",
        "--conjugator-radius",
        "4",
        "--target-radius",
        "2",
    ];
    let one = ordkit(&[&args[..], &["--threads", "1"]].concat());
    let four = ordkit(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, ordkit(&args).stdout);
}

#[test]
fn selftest_filter_and_negative_control() {
    let v = json(&["selftest", "--filter", "holder"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"][0]["tag"], "holder");
    assert_eq!(v["failed"], 0);
    let out = ordkit(&[
        "selftest",
        "--filter",
        "braid-identities",
        "--corrupt-reduction",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["id"], 1);
    assert_eq!(v["results"][0]["passed"], false);
}
