//! Ordered hypergraph Ramsey numbers, the measure Ramsey inequality on finite
//! spaces, corner counts on `(ℤ/n)²`, a greedy sumset builder and Δ-set search.

mod corners;
mod measure;
mod ordered;
mod sumset;

pub use corners::{corners_count, markov_level_set, CornersInstance, MarkovReport};
pub use measure::{
    measure_ramsey_bound_check, measure_ramsey_bound_check_with, measure_ramsey_lhs, FiniteProbabilitySpace,
    MeasureRamseyReport, Table,
};
pub use ordered::{
    contains_ordered_copy, ordered_ramsey_number, ordered_ramsey_number_with_budget, EdgeColoring, OrderedHypergraph,
    RamseyOutcome, DEFAULT_RAMSEY_BUDGET,
};
pub use sumset::{
    delta_set_search, greedy_sumset_builder, is_delta_set, verify_sumset, SumsetOutcome, DEFAULT_PREFIX_CAP,
};
