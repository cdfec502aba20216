//! Classification of complexes over F2[[U]] into one-step and two-step
//! summands, model complexes, and seeded generators for test campaigns.

mod classify;
mod minors;
mod random;

pub use classify::{
    classify, decompose, realize, ClassificationReport, Decomposition, NormalForm, OneStepEntry,
    Summand, TwoStep,
};
pub use minors::{minor_gcd_check, MINOR_RANK_LIMIT};
pub use random::{
    random_basis_change, random_basis_change_tracked, random_chain_map, random_complex,
    random_normal_form, BasisChange, ComplexSpec,
};
