//! The minus, infinity and plus homology flavors, the connecting map between
//! them, exactness checks, mapping-torus Betti numbers and the F2 pairing.

mod chain;
mod flavors;
mod les;
mod mapping_torus;
mod pairing;
pub mod window;

pub use chain::{ChainTerm, LaurentChain};
pub(crate) use flavors::delta_inverse_of;
pub use flavors::{
    delta, delta_inverse, h_infinity, h_minus, h_plus, h_red, homologous_minus, homologous_plus,
    homology, minus_class, F2Dimension, Flavor, HomologyPresentation, HomologyReport, MinusClass,
    Side, TorsionSummand,
};
pub use les::{les_exactness_check, JointReport, LesReport, WindowLes};
pub use mapping_torus::{f2_betti, mapping_torus_betti};
pub use pairing::{f2_pairing, perfect_pairing_check, PairingReport};
