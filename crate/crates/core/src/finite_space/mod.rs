//! Finite q-measure spaces over the full power set of a small universe.

mod additivity;
mod builders;
mod compat;
pub mod examples;
mod table;

pub use additivity::{
    disjoint_union_expand, grade2_check, graden_check, graden_expansion, pairwise_expansion, theorem21_check,
    Theorem21Report,
};
pub use builders::{
    decoherence_check, from_complex_amplitude, from_decoherence, from_destructive_pairs, from_measure_squared,
    from_pair_matrix, from_signed_measure_squared, random_pair_matrix, recover_pair_matrix, DecoherenceMatrix,
    PairMeasureMatrix,
};
pub use compat::{
    center_measure_check, compatibility, is_compatible, is_splitting, mu_center, regularity_check, theorem24_check,
    Compatibility, RegularityReport, Theorem24Report,
};
pub use table::{CheckConfig, FiniteMeasure, QMeasureTable, DEFAULT_SEED};
