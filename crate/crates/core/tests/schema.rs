use pseudogauss::report::{run_suite, run_verify, RunConfig};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&raw).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value, label: &str) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{label}: {errors:#?}");
}

#[test]
fn reports_match_schema() {
    let v = schema("report.schema.json");
    for name in [
        "clifford_torus",
        "horosphere",
        "totally_geodesic",
        "chen_flat",
        "umbilical_sphere_s4",
    ] {
        let r = run_verify(&RunConfig::for_surface(name)).unwrap();
        let doc: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_valid(&v, &doc, name);
    }
}

#[test]
fn failing_report_matches_schema() {
    let mut cfg = RunConfig::for_surface("clifford_torus");
    cfg.fd_step = 0.1;
    let r = run_verify(&cfg).unwrap();
    assert!(!r.passed);
    let doc: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_valid(&schema("report.schema.json"), &doc, "coarse step");
}

#[test]
fn suite_matches_schema() {
    let s = run_suite(&RunConfig::default()).unwrap();
    let doc: Value = serde_json::from_str(&s.to_json()).unwrap();
    assert_valid(&schema("suite.schema.json"), &doc, "suite");
}

#[test]
fn schema_rejects_tampered_report() {
    let v = schema("report.schema.json");
    let r = run_verify(&RunConfig::for_surface("clifford_torus")).unwrap();
    let good: Value = serde_json::from_str(&r.to_json()).unwrap();

    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("fit");
    assert!(!v.is_valid(&missing));

    let mut bad_verdict = good.clone();
    bad_verdict["fit"]["verdict"] = Value::from("two_type");
    assert!(!v.is_valid(&bad_verdict));

    let mut extra = good;
    extra["surface"]["colour"] = Value::from("red");
    assert!(!v.is_valid(&extra));
}
