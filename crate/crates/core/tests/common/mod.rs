#![allow(dead_code)]

use std::path::PathBuf;

use num_rational::BigRational;
use offsetal::cli::input::parse_curve;
use offsetal::curve::RationalParametrization;
use offsetal::offset::OffsetProblem;
use offsetal::polycore::MultiPoly;
use proptest::test_runner::{Config, RngSeed};

pub mod props;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> RationalParametrization {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_curve(&text).unwrap().parametrization().unwrap()
}

pub fn problem(name: &str, d: i64) -> OffsetProblem {
    OffsetProblem::new(&fixture(name), BigRational::from_integer(d.into())).unwrap()
}

pub fn mp(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

/// Offset fixtures with their distances.
pub const FIXTURES: [(&str, i64); 4] = [
    ("cardioid.txt", 1),
    ("cardioid_offset.txt", 1),
    ("parabola.txt", 1),
    ("parabola_offset.txt", 6),
];

pub fn seeded(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(offsetal::rng::base_seed()),
        failure_persistence: None,
        ..Config::default()
    }
}
