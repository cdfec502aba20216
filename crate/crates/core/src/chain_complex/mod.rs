//! Free graded chain complexes over F2[U], chain maps, and the standard
//! constructions on them (dual, tensor product, direct sum, shift, cone).
//!
//! Conventions: gradings are integers, `∂` lowers grading by one, and `U`
//! has degree 0. Only the parity of a grading matters for Lefschetz
//! quantities; absolute gradings matter for Betti numbers.

mod chain_map;
mod complex;
mod matrix;
mod text;

pub use chain_map::{cone, ChainMap};
pub use complex::{Generator, GradedComplex};
pub use matrix::PolyMatrix;
pub use text::{chain_map_to_text, complex_to_text, parse_chain_map, parse_complex};
