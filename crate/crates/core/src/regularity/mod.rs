//! Factors, conditional expectations and the weak arithmetic regularity
//! decomposition, together with the sumset-structure pipeline built on it.

mod decompose;
mod factor;
mod probe;
mod structure;

pub use decompose::{
    counting_exceptions, energy_increment_step, find_large_character, level_set, weak_regularity,
    ChosenArc, DecompositionReport, RegularityConfig, StepOutcome,
};
pub use factor::{project, pythagoras_gap, Factor};
pub use probe::{measurability_probe, MeasurabilityProbe};
pub use structure::{popular_restrict, structured_superset, superset_constraint, superset_from_decomposition, PopularRestrictReport, SupersetReport};
