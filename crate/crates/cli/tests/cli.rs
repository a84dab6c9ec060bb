use std::process::Command;

use basepoints_cli::{compute_text, parse_ideal, parse_polynomial, CliError, Format, IdealParseError};
use basepoints_core::algebra::{rat, BiPoly, Rational};
use proptest::prelude::*;
use serde_json::Value;

type Q = BiPoly<Rational>;

const GOLDEN: &str = "# worked example\n(y^5+x^7)^2 + y^10*x\nx^8*(y^3+x^5)\ny^8*(y^2-x^3)\n";

fn golden_generators() -> Vec<Q> {
    let (x, y) = (Q::x(), Q::y());
    vec![
        y.pow(5).add(&x.pow(7)).pow(2).add(&y.pow(10).mul(&x)),
        x.pow(8).mul(&y.pow(3).add(&x.pow(5))),
        y.pow(8).mul(&y.pow(2).sub(&x.pow(3))),
    ]
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_basepoints"))
}

fn write_input(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// The final `values = [...]` line of a text report, sorted.
fn sorted_values(text: &str) -> Vec<i64> {
    let line = text.lines().rev().find(|l| l.starts_with("values = [")).expect("values line");
    let mut v: Vec<i64> =
        line["values = [".len()..line.len() - 1].split_whitespace().map(|c| c.parse().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn parses_the_worked_example() {
    assert_eq!(parse_ideal(GOLDEN).unwrap(), golden_generators());
}

#[test]
fn dangling_operator_is_located() {
    match parse_ideal("x\ny +\n") {
        Err(IdealParseError::Syntax(e)) => assert_eq!((e.line, e.col), (2, 3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn single_point_dot() {
    let dot = compute_text("x\ny\n", Format::Dot, false).unwrap();
    assert_eq!(dot, "graph {\n  n1 [label=\"1\"];\n}\n");
}

#[test]
fn golden_text_output() {
    let text = compute_text(GOLDEN, Format::Text, false).unwrap();
    assert!(text.contains("base points: 12\n"), "{text}");
    assert_eq!(sorted_values(&text), [10, 13, 25, 36, 39, 40, 41, 42, 47, 58, 69, 80]);
    assert!(text.contains("multiplicities = [10 3 2 1 1 1 1 1 1 1 1 1]\n"), "{text}");
    let matrix_rows =
        text.lines().skip_while(|l| *l != "proximity matrix:").skip(1).take_while(|l| l.starts_with("  "));
    let rows: Vec<Vec<i64>> = matrix_rows.map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 12);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 12);
        assert_eq!(row[i], 1);
        assert!(row.iter().all(|&c| c == 0 || c == 1 || c == -1));
    }
}

#[test]
fn golden_json_output() {
    let json: Value = serde_json::from_str(&compute_text(GOLDEN, Format::Json, true).unwrap()).unwrap();
    let values: Vec<i64> = serde_json::from_value(json["values"].clone()).unwrap();
    assert_eq!(values.len(), 12);
    let mut sorted = values.clone();
    sorted.sort();
    assert_eq!(sorted, [10, 13, 25, 36, 39, 40, 41, 42, 47, 58, 69, 80]);
    let points = json["points"].as_array().unwrap();
    assert_eq!(points.len(), 12);
    assert_eq!(points[0]["id"], 1);
    assert_eq!(points[0]["parents"].as_array().unwrap().len(), 0);
    assert!(points.iter().all(|p| p["kind"] == "free" || p["kind"] == "satellite"));
    assert_eq!(json["proximity_matrix"].as_array().unwrap().len(), 12);
    assert_eq!(json["dual_graph"]["nodes"].as_array().unwrap().len(), 12);
    assert_eq!(json["dual_graph"]["edges"].as_array().unwrap().len(), 11);
    let inter = &json["intermediates"];
    assert_eq!(inter["singular"]["points"].as_array().unwrap().len(), 15);
    assert_eq!(inter["free_completed"]["points"].as_array().unwrap().len(), 17);
    assert_eq!(inter["satellite_completed"]["points"].as_array().unwrap().len(), 21);
    assert_eq!(inter["multiplicities"].as_array().unwrap().len(), 21);
    let plain: Value = serde_json::from_str(&compute_text(GOLDEN, Format::Json, false).unwrap()).unwrap();
    assert!(plain.get("intermediates").is_none());
}

#[test]
fn json_generators_parse_back() {
    let json: Value = serde_json::from_str(&compute_text(GOLDEN, Format::Json, false).unwrap()).unwrap();
    let back: Vec<Q> =
        json["generators"].as_array().unwrap().iter().map(|g| parse_polynomial(g.as_str().unwrap()).unwrap()).collect();
    assert_eq!(back, golden_generators());
}

#[test]
fn output_is_deterministic() {
    for format in [Format::Text, Format::Json, Format::Dot] {
        let a = compute_text(GOLDEN, format, true).unwrap();
        let b = compute_text(GOLDEN, format, true).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn unit_generator_gives_no_points() {
    let json: Value = serde_json::from_str(&compute_text("x\n1 + y\n", Format::Json, false).unwrap()).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), 0);
}

#[test]
fn zero_generator_is_bad_input() {
    let err = compute_text("x\n0\n", Format::Text, false).unwrap_err();
    assert!(matches!(err, CliError::Compute(_)));
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn binary_success_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "golden.txt", GOLDEN);
    let out = dir.path().join("graph.dot");
    let status = binary()
        .args(["compute", "--ideal"])
        .arg(&input)
        .args(["--format", "dot", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph {\n"));
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 11);

    let stdout = binary().args(["compute", "--ideal"]).arg(&input).output().unwrap();
    assert_eq!(stdout.status.code(), Some(0));
    let text = String::from_utf8(stdout.stdout).unwrap();
    assert_eq!(sorted_values(&text), [10, 13, 25, 36, 39, 40, 41, 42, 47, 58, 69, 80]);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_input(&dir, "bad.txt", "x +\n");
    let out = binary().args(["compute", "--ideal"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 1, column 3"), "{stderr}");

    let empty = write_input(&dir, "empty.txt", "# nothing\n");
    assert_eq!(binary().args(["compute", "--ideal"]).arg(&empty).output().unwrap().status.code(), Some(1));

    let missing = dir.path().join("missing.txt");
    assert_eq!(binary().args(["compute", "--ideal"]).arg(&missing).output().unwrap().status.code(), Some(1));
}

fn poly() -> impl Strategy<Value = Q> {
    prop::collection::vec((0u32..=5, 0u32..=5, -20i64..=20, 1i64..=6), 0..=5).prop_map(|terms| {
        let mut f = Q::zero();
        for (a, b, n, d) in terms {
            f = f.add(&Q::monomial(rat(n) / rat(d), a, b));
        }
        f
    })
}

proptest! {
    #[test]
    fn display_parses_back(f in poly()) {
        prop_assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
    }
}
