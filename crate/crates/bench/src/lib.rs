//! Families used by the benchmarks in `benches/`.

use std::f64::consts::PI;

use zerodist_core::FamilySpec;

pub fn mp() -> FamilySpec {
    FamilySpec::meixner_pollaczek(1.0, PI / 3.0).expect("valid parameters")
}

pub fn meixner() -> FamilySpec {
    FamilySpec::meixner(1.0, 0.25).expect("valid parameters")
}
