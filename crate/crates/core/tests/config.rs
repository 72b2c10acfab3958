use neutral_asymp::config::ExperimentConfig;
use neutral_asymp::fixtures::FIXTURES;
use neutral_asymp::Error;
use serde_json::Value;

#[test]
fn configs_round_trip_byte_stable() {
    for f in FIXTURES.iter().filter(|f| f.expected_exit != 1) {
        let cfg = ExperimentConfig::from_json(f.json).unwrap();
        let once = cfg.to_json().unwrap();
        let again = ExperimentConfig::from_json(&once).unwrap();
        assert_eq!(again, cfg, "{}", f.name);
        assert_eq!(again.to_json().unwrap(), once, "{}", f.name);
    }
}

fn with_extra(path: &[&str]) -> String {
    let mut v: Value = serde_json::from_str(FIXTURES[0].json).unwrap();
    let mut node = &mut v;
    for key in path {
        node = node.get_mut(*key).unwrap();
    }
    node.as_object_mut().unwrap().insert("bogus".into(), Value::from(1));
    v.to_string()
}

#[test]
fn unknown_keys_are_fatal() {
    for path in [
        &[][..],
        &["spec"],
        &["seeds"],
        &["spec", "u"],
        &["spec", "f"],
        &["spec", "g"],
        &["spec", "sigma"],
    ] {
        let err = ExperimentConfig::from_json(&with_extra(path));
        assert!(matches!(err, Err(Error::Config(_))), "{path:?}: {err:?}");
    }
    let mut v: Value = serde_json::from_str(FIXTURES[0].json).unwrap();
    v["thresholds"] = serde_json::json!({ "tau_smal": 0.1 });
    assert!(ExperimentConfig::from_json(&v.to_string()).is_err());
}

#[test]
fn thresholds_default_when_absent() {
    let cfg = ExperimentConfig::from_json(FIXTURES[0].json).unwrap();
    assert_eq!(cfg.thresholds.tau_small, 0.05);
    assert_eq!(cfg.thresholds.tau_tail, 5e-3);
}

#[test]
fn seed_length_is_checked() {
    let mut v: Value = serde_json::from_str(FIXTURES[0].json).unwrap();
    v["seeds"]["x"].as_array_mut().unwrap().pop();
    assert!(matches!(ExperimentConfig::from_json(&v.to_string()), Err(Error::Seed(_))));
}
