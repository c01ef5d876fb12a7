//! The recorded derived constants match what the engines produce now.

#[path = "../examples/derived_constants.rs"]
mod generator;

#[test]
fn derived_constants_fixture_is_current() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/derived_constants.json");
    let recorded: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(generator::derived_constants().unwrap(), recorded);
}

#[test]
fn kappa_signs() {
    let recorded: serde_json::Value =
        serde_json::from_str(include_str!("../fixtures/derived_constants.json")).unwrap();
    assert_eq!(recorded["kappa"], serde_json::json!(["-1", "1", "1", "1", "-1", "1"]));
}
