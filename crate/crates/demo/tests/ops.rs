use owf_demo::{factor_json, ow_map_json, parse_bits, tower_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn ow_map_on_ball1_by_hand() {
    // Canonical order of ball(1): 1, a, A, b, B.
    let v = parse(&ow_map_json(1, "1 0 1 1 0", 0).unwrap());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["cell"], "1");
    assert_eq!((rows[0]["p"].as_u64(), rows[0]["q"].as_u64()), (Some(1), Some(0)));
    // A·a = 1, so p(A) = x(A) + x(1).
    assert_eq!(rows[2]["p"].as_u64(), Some(0));
    assert!(rows[1]["p"].is_null());
}

#[test]
fn random_input_is_seeded() {
    assert_eq!(ow_map_json(2, "", 3).unwrap(), ow_map_json(2, "", 3).unwrap());
    assert_ne!(parse_bits(3, "", 3).unwrap(), parse_bits(3, "", 4).unwrap());
}

#[test]
fn tower_level0_is_first_component() {
    let a = parse(&ow_map_json(3, "", 5).unwrap());
    let t = parse(&tower_json(3, 2, "", 5).unwrap());
    for (r, s) in a["rows"].as_array().unwrap().iter().zip(t["rows"].as_array().unwrap()) {
        assert_eq!(r["p"], s["levels"][0]);
    }
}

#[test]
fn bad_inputs_are_errors() {
    assert!(ow_map_json(1, "0101", 0).is_err());
    assert!(ow_map_json(1, "01012", 0).is_err());
    assert!(ow_map_json(9, "", 0).is_err());
    assert!(tower_json(2, 0, "", 0).is_err());
    assert!(factor_json(10, 0, 0.5).is_err());
}

#[test]
fn factor_histogram_counts_add_up() {
    let v = parse(&factor_json(10_000, 1, 0.5).unwrap());
    let total: u64 = v["marginal"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 10_000);
}
