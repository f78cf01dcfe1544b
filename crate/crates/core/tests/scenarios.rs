use std::path::Path;

use minpair_core::report::{analyze, AnalysisReport};
use minpair_core::scenario::Scenario;
use minpair_core::suite::{bundle_dir, load_dir, run_suite};
use minpair_core::verifier::{IcClassification, Status, THM_1_2, THM_1_3};
use serde_json::json;

fn bundled(id: &str) -> AnalysisReport {
    let sc = Scenario::load(&bundle_dir().join(format!("{id}.json"))).unwrap();
    analyze(&sc).unwrap()
}

fn fixture(name: &str) -> AnalysisReport {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    analyze(&Scenario::load(&path).unwrap()).unwrap()
}

#[test]
fn bundle_has_seven_scenarios_in_id_order() {
    let ids: Vec<String> = load_dir(&bundle_dir()).unwrap().into_iter().map(|s| s.id).collect();
    assert_eq!(ids, ["S1", "S2", "S3", "S4", "S5", "S6", "S7"]);
}

#[test]
fn declared_expectations_hold() {
    let summary = run_suite(&bundle_dir(), None).unwrap();
    assert!(summary.errors().is_empty(), "{:?}", summary.errors());
    for e in &summary.entries {
        let r = e.outcome.as_ref().unwrap();
        assert!(r.expectation_mismatches.is_empty(), "{}: {:?}", r.id, r.expectation_mismatches);
    }
}

#[test]
fn every_verdict_other_than_the_fixture_is_as_expected() {
    let summary = run_suite(&bundle_dir(), None).unwrap();
    for (id, v) in summary.rows() {
        if v.expected.is_none() {
            assert_ne!(v.status, Status::Fail, "{id} {}: {}", v.name, v.message);
        }
    }
}

#[test]
fn s1_report() {
    let r = bundled("S1");
    assert_eq!((r.j, r.lambda, r.residue_degree, r.ic_degree), (2, 1, 2, 2));
    assert_eq!(r.ic_classification, IcClassification::EqualsHenselizationOfK);
    assert_eq!(r.v_q.to_string(), "2");
    assert_eq!(r.s.as_deref(), Some("t^2"));
    assert_eq!(
        serde_json::to_value(&r.minimality).unwrap(),
        json!({"kind": "BruteForceChecked", "candidates": 29})
    );
}

#[test]
fn s5_is_value_transcendental() {
    let r = bundled("S5");
    assert_eq!(serde_json::to_value(r.transcendence_type).unwrap(), json!("ValueTranscendental"));
    assert_eq!((r.lambda, r.residue_degree, r.e, r.s.clone()), (2, 1, None, None));
    assert_eq!(r.v_q.to_string(), "(2,-2)");
}

#[test]
fn s6_inseparable_gives_henselization_of_k() {
    let r = bundled("S6");
    assert_eq!((r.j, r.degree), (2, 2));
    assert_eq!(r.ic_classification, IcClassification::EqualsHenselizationOfK);
    assert_eq!(r.ore_certificate.inseparable_degree, 2);
}

#[test]
fn at_least_five_equivalent_couples_agree() {
    let summary = run_suite(&bundle_dir(), Some(THM_1_2)).unwrap();
    let rows = summary.rows();
    assert!(rows.len() >= 5);
    for (id, v) in rows {
        assert_eq!(v.status, Status::Pass, "{id}: {}", v.message);
    }
}

#[test]
fn trivial_subfield_is_consistent() {
    let r = bundled("S7");
    let v = r.verdicts.iter().find(|v| v.details["subfield"] == "b_zero").unwrap();
    assert_eq!(v.status, Status::Pass, "{}", v.message);
    assert_eq!((v.details["j_K"].clone(), v.details["j_Kb"].clone()), (json!(1), json!(1)));
}

#[test]
fn sextic_over_quadratic_subfield_is_sharp() {
    let r = fixture("sextic.json");
    assert!(r.expectation_mismatches.is_empty(), "{:?}", r.expectation_mismatches);
    assert_eq!(r.ic_classification, IcClassification::Intermediate { degree: 3 });
    let cube = r.verdicts_named(THM_1_3).find(|v| v.details["subfield"] == "cube").unwrap();
    assert_eq!(cube.status, Status::Pass, "{}", cube.message);
    assert_eq!(cube.details["relative_degree"], json!(3));
    assert_eq!(cube.details["j_Kb"], json!(3));
    assert_eq!(cube.details["sandwich_sharp"], json!(true));
    let base = r.verdicts_named(THM_1_3).find(|v| v.details["subfield"] == "base").unwrap();
    assert_eq!(base.status, Status::Pass, "{}", base.message);
    assert_eq!(base.details["sandwich_sharp"], json!(false));
}

#[test]
fn reports_round_trip() {
    for sc in load_dir(&bundle_dir()).unwrap() {
        let r = analyze(&sc).unwrap();
        let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(analyze(&sc).unwrap().to_json(), r.to_json(), "rerun differs for {}", sc.id);
    }
}

#[test]
fn bad_scenarios_are_rejected() {
    let good = std::fs::read_to_string(bundle_dir().join("S2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["gamma"] = json!("abc");
    assert!(Scenario::from_json(&v.to_string()).is_err());

    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["schema_version"] = json!(2);
    assert!(Scenario::from_json(&v.to_string()).is_err());

    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["Q"] = json!(["0", "-1", "1"]);
    let sc = Scenario::from_json(&v.to_string()).unwrap();
    assert!(analyze(&sc).unwrap_err().to_string().contains("not certified"));

    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["Q"] = json!(["1", "1", "1"]);
    v["gamma"] = json!("0");
    v["equivalents"] = json!([]);
    let sc = Scenario::from_json(&v.to_string()).unwrap();
    assert!(analyze(&sc).unwrap_err().to_string().contains("not certified minimal"));
}
