//! Constructive witnesses: corner identities and certificates, the
//! fourth-power reduction, invertible witness matrices and the doubling
//! recursion.

mod corner;
mod doubling;
mod matrices;

pub use corner::{
    corner_product_identity_check, corner_product_identity_rows, extract_additivity, fourth_power_reduction,
    fourth_power_values, CornerCertificate, CornerCheck, FourthPowerReport,
};
pub use doubling::{
    doubling_additivity_closure, verify_trace, Constraint, DoublingOptions, DoublingTrace, ExtensionEntry,
    LevelSummary, CONFLICT_LIMIT, MAX_DOUBLING_DEPTH,
};
pub use matrices::{
    build_uv_pair, group_hom_restriction_check, invertible_witness_matrices, uv_identity_check, uv_identity_rows,
    Mat2, UvPair, WitnessMatrices,
};
