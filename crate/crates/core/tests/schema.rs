use std::path::PathBuf;

use possum::cohort::{ingest, InclusionPolicy};
use possum::metrics::BootstrapConfig;
use possum::positive_sum::GatePolicy;
use possum::report::{audit, compare_study, ReportConfig};
use possum::synth::{build_study, ScenarioSpec};
use serde_json::Value;

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn config(conservative_ci: bool) -> ReportConfig {
    ReportConfig {
        inclusion: InclusionPolicy::default(),
        bootstrap: BootstrapConfig {
            n_resamples: 30,
            ..Default::default()
        },
        gate: GatePolicy {
            conservative_ci,
            ..Default::default()
        },
    }
}

#[test]
fn compare_reports_validate() {
    let v = validator();
    for (name, conservative) in [
        ("m2_like", false),
        ("m4_like", true),
        ("identity", false),
        ("m3_like", true),
    ] {
        let mut spec = ScenarioSpec::preset(name, 1).unwrap();
        for g in &mut spec.groups {
            g.n_pos = 30;
            g.n_neg = 50;
        }
        let study = build_study(&spec).unwrap();
        let rep = compare_study(&study, &config(conservative)).unwrap();
        assert_valid(&v, &serde_json::to_value(&rep).unwrap());
    }
}

#[test]
fn audit_reports_validate() {
    let v = validator();
    let study = build_study(&ScenarioSpec::preset("m2_like", 4).unwrap()).unwrap();
    let rep = audit(study.baseline(), &config(false)).unwrap();
    assert_valid(&v, &serde_json::to_value(&rep).unwrap());

    // Undefined fairness score and an excluded group serialize as nulls.
    let text = "example_id,finding,label,score,group\na,f,1,0.9,A\nb,f,0,0.1,A\nc,f,1,0.4,B\n";
    let set = ingest(text.as_bytes(), "tiny", b',').unwrap();
    let rep = audit(&set, &config(false)).unwrap();
    let doc = serde_json::to_value(&rep).unwrap();
    assert!(doc["summaries"][0]["fairness_score"].is_null());
    assert!(doc["summaries"][0]["per_group"][1]["auroc"].is_null());
    assert_valid(&v, &doc);
}

#[test]
fn schema_rejects_foreign_documents() {
    let v = validator();
    assert!(!v.is_valid(&serde_json::json!({"tool": "possum", "command": "audit"})));
}
