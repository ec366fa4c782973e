//! Exact verification by brute-force enumeration over small vertex sets.

mod checks;
mod example;
mod stats;
mod table;

pub use checks::{
    all_passed, relation_names, run_check, CheckParams, CheckReport, Metric, CHECK_NAMES, CROSS_SAMPLER_TV_THRESHOLD,
    EXACT_TOLERANCE, PIPELINE_RUNS, RANDOM_RELATION_CASES, SAMPLER_TV_THRESHOLD,
};
pub use example::{example_h, example_h_prime, example_outcomes, FixtureOutcome, FIXTURES};
pub use stats::{chi_square, ChiSquare};
pub use table::{
    check_bound, class_matches, empirical_from, empirical_model_table, empirical_table, enumerate_hypergraphs,
    exact_table, total_variation, DistributionTable, ENUMERATION_LIMIT,
};
