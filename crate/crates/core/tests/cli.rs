use std::io::Write;
use std::process::{Command, Output, Stdio};

use polyirr::criteria::IrreducibilityCertificate;
use polyirr::decomp::OracleBudget;
use polyirr::poly::parse;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyirr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verdict_json_round_trips_and_verifies() {
    let expr = "z1^2*z2 + z1 + z3^2";
    let o = run(&["verdict", "--format", "json", expr], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "Irreducible");
    assert_eq!(v["criterion"], "DegreeGcd");
    assert_eq!(v["degrees"], serde_json::json!([3, 2]));
    assert_eq!(v["h0"]["normal"], serde_json::json!([2, 2, 3]));
    assert_eq!(v["h0"]["offset"], 6);
    assert_eq!(v["edge"]["x0"], serde_json::json!([2, 1, 0]));
    assert_eq!(v["edge"]["x1"], serde_json::json!([0, 0, 2]));
    let cert = IrreducibilityCertificate::from_json(&text).unwrap();
    cert.verify(&parse(expr, None).unwrap(), &OracleBudget::default())
        .unwrap();
}

#[test]
fn text_and_json_carry_the_same_witness() {
    let expr = "z1^3 + z2^2 + z1^2*z2^2 + z3^2";
    let text = stdout(&run(&["verdict", expr], ""));
    let json: Value =
        serde_json::from_str(&stdout(&run(&["verdict", "--format", "json", expr], ""))).unwrap();
    assert!(text.contains("criterion: FaceIndecomposable"));
    assert_eq!(json["criterion"], "FaceIndecomposable");
    assert!(text.contains("prism apex (0,2,0) over conv{(2,2,0), (3,0,0)}, gcd 1"));
    assert_eq!(
        json["indecomposable"]["method"]["prism"]["apex"],
        serde_json::json!([0, 2, 0])
    );
}

#[test]
fn inconclusive_and_errors() {
    let o = run(&["verdict", "z1^2 + z2^2"], "");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verdict", "z1*z2"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("divisible by z1, z2; Gao criterion inapplicable"));
    let o = run(&["verdict", "z1^-1"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("negative exponent at position 3"));
    assert_eq!(run(&["verdict", "7"], "").status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(
        run(&["--oracle-max-points", "0", "verdict", "z1"], "")
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn polytope_of_worked_example() {
    let o = run(
        &["polytope", "--format", "json", "z1^3 + z2^2 + z1^2*z2^2"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"dim":2,"vertices":[[0,2],[2,2],[3,0]]}"#
    );
}

#[test]
fn oracle_from_stdin_and_file() {
    let tri = r#"{"dim":2,"vertices":[[2,0],[0,1],[0,3]]}"#;
    let o = run(&["oracle", "--format", "json"], tri);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "indecomposable");

    let dir = std::env::temp_dir().join(format!("polyirr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(&path, r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#).unwrap();
    let o = run(
        &[
            "oracle",
            "--format",
            "json",
            "--file",
            path.to_str().unwrap(),
        ],
        "",
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decomposable"], true);
    assert_eq!(
        v["summands"][0]["vertices"],
        serde_json::json!([[0, 0], [0, 1]])
    );

    let o = run(&["oracle", "--oracle-max-points", "3"], tri);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("unknown: budget"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn expression_from_file() {
    let dir = std::env::temp_dir().join(format!("polyirr-expr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    std::fs::write(&path, "z1^3 + z2^2 + z2*z3 + z4^5\n").unwrap();
    let o = run(&["verdict", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["verdict", "z1", "--file", path.to_str().unwrap()], "")
            .status
            .code(),
        Some(1)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ostrowski_checks() {
    let o = run(&["check-ostrowski", "--format", "json", "z1+1", "z2+1"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(
        v["checks"][0]["product"]["vertices"],
        serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]])
    );
    let o = run(&["check-ostrowski", "--random", "50", "--seed", "0"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("50 of 50 pairs equal (seed 0)"));
}

#[test]
fn splits_listing() {
    let o = run(&["splits", "--format", "json", "z1 + z2 + z3"], "");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sets: Vec<(Value, Value)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["I"].clone(), s["J"].clone()))
        .collect();
    assert_eq!(
        sets,
        vec![
            (serde_json::json!([1]), serde_json::json!([2, 3])),
            (serde_json::json!([2]), serde_json::json!([1, 3])),
            (serde_json::json!([1, 2]), serde_json::json!([3])),
        ]
    );
}
