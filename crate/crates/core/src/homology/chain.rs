use std::collections::BTreeSet;

use serde::Serialize;

use crate::chain_complex::{GradedComplex, PolyMatrix};
use crate::scalar_ring::{LaurentPolynomial, Polynomial};

/// An element of `C ⊗ F2[U, U^-1]` with finite support: the set of terms
/// `U^exp · g`, keyed by generator index. Its class in `C^+` is its strictly
/// negative part.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct LaurentChain {
    terms: BTreeSet<(usize, i64)>,
}

/// Serialized term `{"gen": id, "exp": k}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ChainTerm {
    pub gen: String,
    pub exp: i64,
}

impl LaurentChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(gen: usize, exp: i64) -> Self {
        let mut c = Self::zero();
        c.toggle(gen, exp);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut c = Self::zero();
        for (g, e) in terms {
            c.toggle(g, e);
        }
        c
    }

    /// `U^shift · Σ_g p_g · g`.
    pub fn from_polynomials(coefficients: &[Polynomial], shift: i64) -> Self {
        let mut c = Self::zero();
        for (g, p) in coefficients.iter().enumerate() {
            for k in p.exponents() {
                c.toggle(g, k as i64 + shift);
            }
        }
        c
    }

    /// Adds `U^exp · gen`.
    pub fn toggle(&mut self, gen: usize, exp: i64) {
        if !self.terms.remove(&(gen, exp)) {
            self.terms.insert((gen, exp));
        }
    }

    pub fn add_assign(&mut self, other: &LaurentChain) {
        for &(g, e) in &other.terms {
            self.toggle(g, e);
        }
    }

    pub fn sum(&self, other: &LaurentChain) -> LaurentChain {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, gen: usize, exp: i64) -> bool {
        self.terms.contains(&(gen, exp))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().copied()
    }

    pub fn negative_part(&self) -> LaurentChain {
        self.filtered(|e| e < 0)
    }

    pub fn nonnegative_part(&self) -> LaurentChain {
        self.filtered(|e| e >= 0)
    }

    /// Terms with exponent in `lo..hi`.
    pub fn window(&self, lo: i64, hi: i64) -> LaurentChain {
        self.filtered(|e| lo <= e && e < hi)
    }

    fn filtered(&self, keep: impl Fn(i64) -> bool) -> LaurentChain {
        LaurentChain {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|&(_, e)| keep(e))
                .collect(),
        }
    }

    /// `U^k · self`.
    pub fn shifted(&self, k: i64) -> LaurentChain {
        LaurentChain {
            terms: self.terms.iter().map(|&(g, e)| (g, e + k)).collect(),
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.iter().map(|&(_, e)| e).min()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.iter().map(|&(_, e)| e).max()
    }

    /// Coefficient of generator `gen` as a Laurent polynomial.
    pub fn coefficient(&self, gen: usize) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for &(_, e) in self.terms.range((gen, i64::MIN)..=(gen, i64::MAX)) {
            p.add_term(e);
        }
        p
    }

    /// Image under a matrix over F2[U] (column `s` is the image of `s`).
    pub fn apply(&self, m: &PolyMatrix) -> LaurentChain {
        let mut out = LaurentChain::zero();
        for &(s, e) in &self.terms {
            for (t, p) in m.column(s) {
                for k in p.exponents() {
                    out.toggle(*t, e + k as i64);
                }
            }
        }
        out
    }

    /// `∂` of the complex, applied over F2[U, U^-1].
    pub fn boundary(&self, c: &GradedComplex) -> LaurentChain {
        self.apply(c.differential())
    }

    /// Gradings of the generators in the support.
    pub fn gradings(&self, c: &GradedComplex) -> BTreeSet<i64> {
        self.terms.iter().map(|&(g, _)| c.grading(g)).collect()
    }

    /// Terms with generator ids, sorted by (id, exponent).
    pub fn to_terms(&self, c: &GradedComplex) -> Vec<ChainTerm> {
        let mut out: Vec<ChainTerm> = self
            .terms
            .iter()
            .map(|&(g, e)| ChainTerm {
                gen: c.generators()[g].id.clone(),
                exp: e,
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Generator;

    #[test]
    fn toggling_cancels() {
        let mut c = LaurentChain::term(0, -1);
        c.toggle(0, -1);
        assert!(c.is_zero());
        let x = LaurentChain::from_terms([(0, -2), (1, 0), (1, 3)]);
        assert_eq!(x.negative_part(), LaurentChain::term(0, -2));
        assert_eq!(x.nonnegative_part().len(), 2);
        assert_eq!(x.shifted(2).min_exponent(), Some(0));
        assert_eq!(x.coefficient(1).to_string(), "1+U^3");
    }

    #[test]
    fn boundary_and_terms() {
        let c = GradedComplex::build(
            "t",
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            [("a".to_string(), "b".to_string(), "U^2+U^3".parse().unwrap())],
        )
        .unwrap();
        let x = LaurentChain::term(0, -2);
        assert_eq!(x.boundary(&c), LaurentChain::from_terms([(1, 0), (1, 1)]));
        assert_eq!(
            serde_json::to_string(&x.sum(&LaurentChain::term(1, 4)).to_terms(&c)).unwrap(),
            r#"[{"gen":"a","exp":-2},{"gen":"b","exp":4}]"#
        );
    }
}
