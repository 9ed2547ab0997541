use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akcurves"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, String, i32) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = run(&a);
    let s = stdout(&o);
    let v: Value = serde_json::from_str(&s).unwrap_or_else(|e| panic!("{}: {}", e, s));
    (v, s, o.status.code().unwrap())
}

#[test]
fn classify_normal_form() {
    let (v, _, code) = json(&["classify", "--at", "0,0", "y^2 - x^5"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["results"][0]["kind"], "a");
    assert_eq!(v["results"][0]["k"], 4);
    assert_eq!(v["pass"], true);
}

#[test]
fn classify_at_another_point() {
    let o = run(&["classify", "--at", "1,-1", "(y + 1)^2 - (x - 1)^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A_2"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_2_with_position() {
    let o = run(&["classify", "y^2 -"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));
}

#[test]
fn field_constant_needs_matching_field() {
    let o = run(&["classify", "y^2 - w*x^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--field=-3"), "{}", stderr(&o));
    let o = run(&["--field", "-1", "classify", "y^2 - w*x^3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--field", "-3", "classify", "y^2 - w*x^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["--field", "5", "identities"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["intersect", "y"]).status.code(), Some(2));
    assert_eq!(run(&["witness", "--b", "40"]).status.code(), Some(2));
    assert_eq!(
        run(&["link", "--m", "1", "--point", "[1:0]", "x1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn intersect_from_files() {
    let dir = std::env::temp_dir().join(format!("akcurves-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (f, g) = (dir.join("f.txt"), dir.join("g.txt"));
    std::fs::write(&f, "y^2\n  - x^3\n").unwrap();
    std::fs::write(&g, "y^2 - x^5\n").unwrap();
    let (v, _, code) = json(&[
        "intersect",
        "--file",
        f.to_str().unwrap(),
        "--file",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["intersection"], 6);
    std::fs::write(&f, "y^2\n  - * x^3\n").unwrap();
    let o = run(&["classify", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bidegree_failure_exits_1() {
    assert_eq!(
        run(&["bidegree", "--b", "4", "x^3 - (y^2 - x)^2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["bidegree", "--b", "4", "y^3 - (x^2 - y)^2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn homogenize_and_back() {
    let (v, _, _) = json(&["homogenize", "y^2 - x^5"]);
    let h = v["results"][0]["homogenized"].as_str().unwrap().to_string();
    let (w, _, code) = json(&["dehomogenize", &h]);
    assert_eq!(code, 0);
    assert_eq!(w["results"][0]["dehomogenized"], "y^2 - x^5");
    assert_eq!(run(&["dehomogenize", "x^2 - z"]).status.code(), Some(2));
}

#[test]
fn link_image() {
    let (v, _, code) = json(&[
        "link",
        "--m",
        "1",
        "--point",
        "[0:1;1:0]",
        "x0*y1^2 + x1*y0^3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["image"]["m"], 0);
    assert_eq!(v["results"][0]["link"]["direction"], "down");
}

#[test]
fn chain_for_the_f0_witness() {
    let (v, _, code) = json(&["chain", "--b", "9"]);
    assert_eq!(code, 0);
    let steps = v["results"][0]["trace"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 7);
    assert_eq!(v["results"][0]["trace"]["landing"]["holds"], true);
    assert_eq!(run(&["chain", "--b", "3"]).status.code(), Some(1));
}

#[test]
fn verify_table_reproduces_all_rows() {
    let o = run(&["verify-table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS").count(), 11);
    assert!(
        out.contains("N(3,b)    3  5  7  8 10 12 13 15 17 18"),
        "{}",
        out
    );
    let (v, _, _) = json(&["verify-table"]);
    let found: Vec<u64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["found_k"].as_u64().unwrap())
        .collect();
    assert_eq!(found, [3, 5, 7, 8, 10, 12, 13, 15, 17, 18]);
    let (v, _, _) = json(&["verify-table", "--b", "11"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
}

#[test]
fn identities_and_bounds_pass() {
    let (v, _, code) = json(&["identities"]);
    assert_eq!(code, 0);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["holds"] == true));
    let (v, _, code) = json(&["bounds", "--b", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["alpha"]["holds"], true);
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["classify", "y^2 - x^5"],
        &["intersect", "y^2 - x^3", "y"],
        &["intersect", "-x^3 + y^2", "-y"],
        &["--field", "-3", "witness", "--b", "8"],
        &["chain", "--b", "10"],
        &["bounds"],
        &["verify-table"],
        &["identities"],
    ];
    for args in cases {
        let (v, s, _) = json(args);
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, s, "{:?}", args);
        let (_, s2, _) = json(args);
        assert_eq!(s2, s, "{:?} is not deterministic", args);
    }
}

#[test]
fn timing_goes_to_stderr_only() {
    let plain = run(&["bounds"]);
    let timed = run(&["--timing", "bounds"]);
    assert_eq!(plain.stdout, timed.stdout);
    assert!(stderr(&timed).starts_with("elapsed: "));
}
