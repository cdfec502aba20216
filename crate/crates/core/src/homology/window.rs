//! Finite F2 models `U^lo C / U^hi C` of the flavored complexes.
//!
//! `U^lo C / U^hi C` has F2 basis `U^e · g` for `lo <= e < hi`. With `hi = 0`
//! it truncates `C^+`, with `lo = 0` it truncates `C^-`, and with both
//! finite it truncates `C^∞`. The homology of a window has spurious classes
//! near its edges; the image of `H(S) → H(T)` for a wider window `S`
//! removes them.

use std::collections::BTreeMap;

use super::LaurentChain;
use crate::chain_complex::{ChainMap, GradedComplex};
use crate::gf2::{nullspace, BitVec, Quotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window [{lo}, {hi})");
        Window { lo, hi }
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn dim(&self, rank: usize) -> usize {
        rank * self.width()
    }

    pub fn index(&self, gen: usize, exp: i64) -> Option<usize> {
        (self.lo <= exp && exp < self.hi).then(|| gen * self.width() + (exp - self.lo) as usize)
    }

    pub fn term(&self, index: usize) -> (usize, i64) {
        let w = self.width();
        (index / w, self.lo + (index % w) as i64)
    }

    /// Image of a chain in the window; terms outside are dropped.
    pub fn vector(&self, rank: usize, x: &LaurentChain) -> BitVec {
        let mut v = BitVec::zeros(self.dim(rank));
        for (g, e) in x.terms() {
            if let Some(i) = self.index(g, e) {
                v.flip(i);
            }
        }
        v
    }

    pub fn chain(&self, v: &BitVec) -> LaurentChain {
        LaurentChain::from_terms(v.ones().map(|i| self.term(i)))
    }
}

/// The window complex `U^lo C / U^hi C`.
pub struct WindowComplex<'a> {
    pub c: &'a GradedComplex,
    pub w: Window,
}

impl<'a> WindowComplex<'a> {
    pub fn new(c: &'a GradedComplex, w: Window) -> Self {
        WindowComplex { c, w }
    }

    pub fn dim(&self) -> usize {
        self.w.dim(self.c.rank())
    }

    pub fn vector(&self, x: &LaurentChain) -> BitVec {
        self.w.vector(self.c.rank(), x)
    }

    pub fn chain(&self, v: &BitVec) -> LaurentChain {
        self.w.chain(v)
    }

    /// Basis elements `U^e g` whose generator has grading `k`.
    fn basis_in_grading(&self, k: i64) -> Vec<(usize, i64)> {
        (0..self.c.rank())
            .filter(|&g| self.c.grading(g) == k)
            .flat_map(|g| (self.w.lo..self.w.hi).map(move |e| (g, e)))
            .collect()
    }

    /// `∂` in the window.
    pub fn boundary(&self, x: &LaurentChain) -> BitVec {
        self.vector(&x.boundary(self.c))
    }

    /// A map on the window induced by a chain map `C → C`.
    pub fn apply(&self, f: &ChainMap, x: &LaurentChain) -> BitVec {
        self.vector(&x.apply(f.matrix()))
    }

    /// Spanning set of the boundaries lying in grading `k`.
    pub fn boundaries(&self, k: i64) -> Vec<BitVec> {
        self.basis_in_grading(k + 1)
            .into_iter()
            .map(|(g, e)| self.boundary(&LaurentChain::term(g, e)))
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Basis of the cycles in grading `k`.
    pub fn cycles(&self, k: i64) -> Vec<BitVec> {
        let basis = self.basis_in_grading(k);
        let columns: Vec<BitVec> = basis
            .iter()
            .map(|&(g, e)| self.boundary(&LaurentChain::term(g, e)))
            .collect();
        nullspace(self.dim(), &columns)
            .into_iter()
            .map(|combo| {
                let x = LaurentChain::from_terms(combo.ones().map(|j| basis[j]));
                self.vector(&x)
            })
            .collect()
    }

    pub fn gradings(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.c.generators().iter().map(|g| g.grading).collect();
        g.sort_unstable();
        g.dedup();
        g
    }
}

/// The image of `H(S) → H(T)` for windows with `T.lo <= S.lo` and
/// `T.hi <= S.hi`, the map being induced by inclusion of `U^{S.lo} C` into
/// `U^{T.lo} C`.
pub struct ImageModel<'a> {
    pub target: WindowComplex<'a>,
    /// Representatives in `T`, independent modulo boundaries, grouped by
    /// grading in increasing order.
    pub quotient: Quotient,
    pub rep_gradings: Vec<i64>,
    pub boundaries: Vec<BitVec>,
}

impl<'a> ImageModel<'a> {
    pub fn new(c: &'a GradedComplex, source: Window, target: Window) -> Self {
        assert!(target.lo <= source.lo && target.hi <= source.hi);
        let s = WindowComplex::new(c, source);
        let t = WindowComplex::new(c, target);
        let mut reps = Vec::new();
        let mut rep_gradings = Vec::new();
        let mut boundaries = Vec::new();
        for k in t.gradings() {
            let b = t.boundaries(k);
            let moved = s.cycles(k).into_iter().map(|z| t.vector(&s.chain(&z)));
            let q = Quotient::new(t.dim(), &b, moved);
            for r in q.reps() {
                reps.push(r.clone());
                rep_gradings.push(k);
            }
            boundaries.extend(b);
        }
        let quotient = Quotient::new(t.dim(), &boundaries, reps);
        assert_eq!(
            quotient.dim(),
            rep_gradings.len(),
            "graded pieces are independent"
        );
        ImageModel {
            target: t,
            quotient,
            rep_gradings,
            boundaries,
        }
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn dims_by_grading(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &k in &self.rep_gradings {
            *out.entry(k).or_insert(0) += 1;
        }
        out
    }

    pub fn rep_chains(&self) -> Vec<LaurentChain> {
        self.quotient
            .reps()
            .iter()
            .map(|r| self.target.chain(r))
            .collect()
    }

    /// Matrix of an endomorphism of the image (columns are images of the
    /// representatives), or `None` if some image leaves it.
    pub fn matrix_of(&self, f: &ChainMap) -> Option<Vec<Vec<bool>>> {
        self.rep_chains()
            .iter()
            .map(|x| self.quotient.coordinates(&self.target.apply(f, x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{realize, NormalForm, TwoStep};

    #[test]
    fn indexing_round_trips() {
        let w = Window::new(-3, 2);
        for g in 0..3 {
            for e in -3..2 {
                assert_eq!(w.term(w.index(g, e).unwrap()), (g, e));
            }
        }
        assert_eq!(w.index(0, 2), None);
    }

    #[test]
    fn plus_image_of_two_step() {
        let c = realize(&NormalForm::new(
            vec![],
            vec![TwoStep {
                grading_a: 1,
                exponent: 2,
            }],
        ));
        // Raw window [-4, 0) has spurious classes at the lower edge; the
        // image from [-4, 0) into [-6, 0) does not.
        let m = ImageModel::new(&c, Window::new(-4, 0), Window::new(-6, 0));
        assert_eq!(m.dim(), 2);
        assert_eq!(m.dims_by_grading(), BTreeMap::from([(1, 2)]));
        let raw = WindowComplex::new(&c, Window::new(-4, 0));
        assert!(!raw.cycles(0).is_empty());
    }
}
