//! Implicit equations of offsets of rational plane curves.
//!
//! The offset at distance `d` of a parametrized curve is computed as a
//! resultant, split into genuine offset components and extraneous factors,
//! and checked against the multiplicity structure expected from the tracing
//! index of the parametrization.

pub mod polycore;

pub mod cli;
pub mod curve;
pub mod numcheck;
pub mod offset;
pub mod rng;
