use std::io::Write;

use rpcoh_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use rpcoh_core::{parse_presentation, ring_from_table, RingTable};
use serde_json::Value;

fn rpcoh(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rpcoh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn verify_smallest_case() {
    let (code, out, err) = rpcoh(&["verify", "2", "2", "3"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("conclusion exact"));
    assert!(out.contains("TC_3 = 6"));
    assert!(out.contains("self-check ok"));
}

#[test]
fn verify_record_is_json() {
    let (code, out, _) = rpcoh(&["verify", "3", "4", "5", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["conclusion"], "exact");
    assert_eq!(v["zcl_lower"], 20);
    assert_eq!(v["dim_upper"], 20);
    assert_eq!(v["params"]["g"], 3);
}

#[test]
fn verify_rejects_two_slots() {
    let (code, out, err) = rpcoh(&["verify", "2", "2", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("s >= 3"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(rpcoh(&[]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["verify", "2", "2"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["verify", "a", "2", "3"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["ring", "2"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["ring", "0", "3"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["sweep", "3..2", "2", "3"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["zcl", "2", "2", "2", "--pool", "all"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["expand", "2", "2", "3", "--factor", "x9@1"]).0, EXIT_USAGE);
    assert_eq!(rpcoh(&["--help"]).0, EXIT_OK);
}

#[test]
fn sweep_grid_is_exact() {
    let (code, out, _) = rpcoh(&["sweep", "2..3", "2..3", "3..4"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.contains("exact")));

    let (_, rec, _) = rpcoh(&["sweep", "2..3", "2..3", "3..4", "--format", "record"]);
    let params: Vec<(u64, u64, u64)> = rec
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            (v["g"].as_u64().unwrap(), v["m"].as_u64().unwrap(), v["s"].as_u64().unwrap())
        })
        .collect();
    let mut sorted = params.clone();
    sorted.sort();
    assert_eq!(params, sorted);
    assert_eq!(params.len(), 8);
}

#[test]
fn sweep_outside_theorem_range_reports_bounds() {
    let (code, out, _) = rpcoh(&["sweep", "2", "2", "2", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["conclusion"], "bounds-only");
    assert_eq!(v["zcl_lower"], 3);
    assert_eq!(v["dim_upper"], 4);
}

#[test]
fn ring_table() {
    let (code, out, _) = rpcoh(&["ring", "2", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("basis (6 elements)"));
    assert!(out.contains("1 + 2q + 2q^2 + q^3"));
}

#[test]
fn presentation_round_trip_through_cli() {
    let (code, text, _) = rpcoh(&["ring", "3", "4", "--emit-presentation"]);
    assert_eq!(code, EXIT_OK);
    let ring = ring_from_table(&parse_presentation(&text).unwrap()).unwrap();
    assert_eq!(ring, RingTable::connected_sum_family(3, 4).unwrap());

    let file = write_file(&text);
    let path = file.path().to_str().unwrap();
    let (code, out, _) = rpcoh(&["ring", "--presentation", path, "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["poincare"], serde_json::json!([1, 3, 3, 3, 1]));
    assert_eq!(v["poincare_duality"], true);
}

#[test]
fn presentation_diagnostics() {
    let file = write_file("gen x 1\ngen y 1\nmul x y = z\n");
    let (code, _, err) = rpcoh(&["ring", "--presentation", file.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown label 'z' at line 3"), "{err}");

    let (code, _, _) = rpcoh(&["ring", "--presentation", "/nonexistent/ring.txt"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn empty_presentation_is_the_ground_field() {
    let file = write_file("");
    let (code, out, _) = rpcoh(&["ring", "--presentation", file.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("basis (1 elements)"));
}

#[test]
fn cubic_truncation_from_file() {
    let file = write_file("gen x 1\ngen x2 2\nmul x x = x2\n");
    let path = file.path().to_str().unwrap();
    let (code, out, _) = rpcoh(&["ring", "--presentation", path]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("basis (3 elements)"));
    let (code, out, _) = rpcoh(&["zcl", "2", "--presentation", path, "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["zcl_lower"].as_u64().unwrap() <= v["dim_upper"].as_u64().unwrap());
}

#[test]
fn steps_pass() {
    let (code, out, _) = rpcoh(&["steps", "3", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("all steps hold"));
    let (_, rec, _) = rpcoh(&["steps", "2", "2", "--format", "record"]);
    let v: Value = serde_json::from_str(rec.trim()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 5);
    assert!(v["first_failure"].is_null());
    assert_eq!(rpcoh(&["steps", "1", "2"]).0, EXIT_USAGE);
}

#[test]
fn zcl_searches() {
    let (code, out, _) = rpcoh(&["zcl", "2", "2", "2", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["zcl_lower"], 3);
    assert_eq!(v["search"]["complete"], true);

    let (code, out, _) = rpcoh(&["zcl", "2", "2", "2", "--pool", "kernel", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["zcl_lower"].as_u64().unwrap() <= 4);

    let (code, out, _) = rpcoh(&["zcl", "2", "3", "3", "--strategy", "greedy", "--seed-witness", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["zcl_lower"], 9);
}

#[test]
fn bounds_and_expand() {
    let (code, out, _) = rpcoh(&["bounds", "2", "2", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("3 <= TC_2(2#RP^2) <= 4"));

    let (code, out, _) = rpcoh(&["expand", "2", "2", "3", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["expanded"], serde_json::json!(["t|t|t"]));

    let (code, out, _) = rpcoh(&["expand", "2", "2", "2", "--factor", "x1@1 + x1@2:2", "--format", "record"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["expanded"], serde_json::json!(["1|t", "t|1"]));
}

#[test]
fn non_zero_divisor_factor_fails() {
    let (code, out, _) = rpcoh(&["expand", "2", "2", "2", "--factor", "x1@1", "--format", "record"]);
    assert_eq!(code, EXIT_FAILED);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["conclusion"], "failed");
    assert_eq!(v["zero_divisor_checks"], serde_json::json!([false]));
}
