//! Example configs shipped with the crate and run by `selftest`.

pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
    pub expected_exit: i32,
}

macro_rules! fixture {
    ($name:literal, $exit:expr) => {
        Fixture {
            name: $name,
            json: include_str!(concat!("../fixtures/", $name, ".json")),
            expected_exit: $exit,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("t1_case_a_m2", 0),
    fixture!("t1_case_a_m1_half_delay", 0),
    fixture!("t1_case_b_m3_backward_shift", 0),
    fixture!("t1_case_b_m2_alternating", 0),
    fixture!("t1_case_a_m3", 0),
    fixture!("t1_case_b_m1_sqrt", 0),
    fixture!("t2_regular_m2", 0),
    fixture!("t2_regular_m3", 0),
    fixture!("geometric_coefficients", 0),
    fixture!("neg_b_harmonic", 2),
    fixture!("neg_causality", 3),
    fixture!("bad_c", 1),
];

/// Fixtures whose hypotheses hold by construction in plain mode.
pub const THEOREM_INSTANCES: &[&str] = &[
    "t1_case_a_m2",
    "t1_case_a_m1_half_delay",
    "t1_case_b_m3_backward_shift",
    "t1_case_b_m2_alternating",
    "t1_case_a_m3",
    "t1_case_b_m1_sqrt",
];

/// Fixtures for the regular refinement.
pub const REGULAR_INSTANCES: &[&str] = &["t2_regular_m2", "t2_regular_m3"];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
