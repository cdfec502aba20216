//! Exact scalars: F2[U], its localization at `(U)`, and Laurent polynomials.

mod laurent;
mod local;
mod polynomial;

pub use laurent::LaurentPolynomial;
pub use local::{local_inverse, LocalScalar};
pub use polynomial::{poly_gcd, Polynomial, Valuation, MAX_EXPONENT};

use crate::error::Result;

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p + q
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_mul(q)
}

pub fn valuation(p: &Polynomial) -> Valuation {
    p.valuation()
}

pub fn formal_derivative(p: &Polynomial) -> Polynomial {
    p.formal_derivative()
}
