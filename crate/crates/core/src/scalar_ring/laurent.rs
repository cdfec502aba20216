use std::collections::BTreeSet;
use std::fmt;

use super::Polynomial;

/// An element of F2[U, U^-1]: a finite set of integer exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    exponents: BTreeSet<i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k);
        p
    }

    /// `U^shift · p`.
    pub fn from_shifted(p: &Polynomial, shift: i64) -> Self {
        let mut out = Self::zero();
        for k in p.exponents() {
            out.add_term(k as i64 + shift);
        }
        out
    }

    /// Adds `U^k` (toggling the coefficient).
    pub fn add_term(&mut self, k: i64) {
        if !self.exponents.remove(&k) {
            self.exponents.insert(k);
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPolynomial) {
        for &k in &other.exponents {
            self.add_term(k);
        }
    }

    pub fn coefficient(&self, k: i64) -> bool {
        self.exponents.contains(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.exponents.iter().copied()
    }

    /// Part with strictly negative exponents (the image in F2[U,U^-1]/F2[U]).
    pub fn negative_part(&self) -> Self {
        LaurentPolynomial {
            exponents: self.exponents.range(..0).copied().collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents
            .iter()
            .map(|&k| match k {
                0 => "1".to_string(),
                1 => "U".to_string(),
                _ => format!("U^{k}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}
