//! Rank, higher gonality, and the bookkeeping around gonality sequences.

mod bounds;
mod search;
mod table;

pub use bounds::{propagate_bounds, BoundFact, BoundTable};
pub use search::{
    check_trigonal_conjecture, clifford_index, gon_witness, gonality, gonality_sequence, gonality_sequence_with,
    has_rank_at_least, is_gon_gt, rank, rr_residual, GonalityWitness, SearchOptions, TrigonalReport, TrigonalRow,
};
pub use table::{
    brill_noether_bound, expected_family_gonality, expected_sequence, genus_from_sequence, rho,
    trigonal_curve_gonality, SequenceSpec, MAX_TABLE_GENUS,
};
