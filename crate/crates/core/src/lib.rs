//! Exact homological algebra for free chain complexes over F2[U] and F2[[U]].
//!
//! The crate classifies complexes into one-step and two-step summands,
//! computes the minus, infinity and plus homology flavors with their
//! connecting map, and evaluates the Lefschetz number of a chain map on H^+
//! in two independent ways: through the formally differentiated differential
//! together with trace and cotrace, and by brute-force linear algebra on a
//! truncated model of C^+.

pub mod chain_complex;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod lefschetz_duality;
pub mod normal_form;
pub mod scalar_ring;

pub use error::{Error, Result};
