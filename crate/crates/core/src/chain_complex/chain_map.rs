use std::sync::Arc;

use super::complex::{check_grading, uniquify, Generator, GradedComplex};
use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::scalar_ring::Polynomial;

/// An F2[U]-linear map between complexes commuting with the differentials.
///
/// Entry `(t, s)` of the matrix is the coefficient of target generator `t` in
/// the image of source generator `s`; every nonzero entry raises the grading
/// by `degree`. Over F2 "commutes" and "anticommutes" coincide.
#[derive(Clone, Debug)]
pub struct ChainMap {
    name: String,
    source: Arc<GradedComplex>,
    target: Arc<GradedComplex>,
    matrix: PolyMatrix,
    degree: i64,
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.matrix == other.matrix
            && self.source == other.source
            && self.target == other.target
    }
}

impl Eq for ChainMap {}

impl ChainMap {
    /// Validates the grading shift and the chain-map identity.
    pub fn new(
        name: impl Into<String>,
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        matrix: PolyMatrix,
        degree: i64,
    ) -> Result<Self> {
        assert_eq!(matrix.n_rows(), target.rank());
        assert_eq!(matrix.n_cols(), source.rank());
        check_grading(source.generators(), target.generators(), &matrix, degree)?;
        let lhs = target.differential().mul(&matrix);
        let rhs = matrix.mul(source.differential());
        let diff = lhs.add(&rhs);
        if let Some((t, s, p)) = diff.entries().next() {
            return Err(Error::NotAChainMap {
                source_gen: source.generators()[s].id.clone(),
                target: target.generators()[t].id.clone(),
                entry: p.to_string(),
            });
        }
        Ok(ChainMap {
            name: name.into(),
            source,
            target,
            matrix,
            degree,
        })
    }

    /// Builds from `(source-id, target-id, entry)` triples; repeats add up.
    pub fn build(
        name: impl Into<String>,
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        entries: impl IntoIterator<Item = (String, String, Polynomial)>,
        degree: i64,
    ) -> Result<Self> {
        let mut m = PolyMatrix::zeros(target.rank(), source.rank());
        for (s, t, p) in entries {
            let si = source
                .index_of(&s)
                .ok_or_else(|| Error::UnknownGenerator(s.clone()))?;
            let ti = target
                .index_of(&t)
                .ok_or_else(|| Error::UnknownGenerator(t.clone()))?;
            m.add_to(ti, si, &p);
        }
        Self::new(name, source, target, m, degree)
    }

    pub(crate) fn from_parts_unchecked(
        name: impl Into<String>,
        source: Arc<GradedComplex>,
        target: Arc<GradedComplex>,
        matrix: PolyMatrix,
        degree: i64,
    ) -> Self {
        let f = ChainMap {
            name: name.into(),
            source,
            target,
            matrix,
            degree,
        };
        debug_assert!(f.revalidate().is_ok());
        f
    }

    pub fn revalidate(&self) -> Result<()> {
        Self::new(
            self.name.clone(),
            self.source.clone(),
            self.target.clone(),
            self.matrix.clone(),
            self.degree,
        )
        .map(|_| ())
    }

    pub fn identity(c: Arc<GradedComplex>) -> Self {
        Self::scalar(c, &Polynomial::one())
    }

    /// Multiplication by `p` on every generator.
    pub fn scalar(c: Arc<GradedComplex>, p: &Polynomial) -> Self {
        let n = c.rank();
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.add_to(i, i, p);
        }
        ChainMap {
            name: if p.is_one() {
                "id".into()
            } else {
                format!("({p})id")
            },
            source: c.clone(),
            target: c,
            matrix: m,
            degree: 0,
        }
    }

    pub fn zero(source: Arc<GradedComplex>, target: Arc<GradedComplex>, degree: i64) -> Self {
        let matrix = PolyMatrix::zeros(target.rank(), source.rank());
        ChainMap {
            name: "0".into(),
            source,
            target,
            matrix,
            degree,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<GradedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedComplex> {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn entry(&self, target: usize, source: usize) -> Polynomial {
        self.matrix
            .get(target, source)
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }

    /// `self ∘ other`; requires `other.target == self.source`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if *other.target != *self.source {
            return Err(Error::ComplexMismatch(format!(
                "cannot compose {} after {}: target and source differ",
                self.name, other.name
            )));
        }
        Ok(ChainMap::from_parts_unchecked(
            format!("{}*{}", self.name, other.name),
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
            self.degree + other.degree,
        ))
    }

    /// Sum of two maps with the same source, target and degree.
    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if *self.source != *other.source
            || *self.target != *other.target
            || self.degree != other.degree
        {
            return Err(Error::ComplexMismatch(format!(
                "cannot add {} and {}",
                self.name, other.name
            )));
        }
        Ok(ChainMap::from_parts_unchecked(
            format!("{}+{}", self.name, other.name),
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
            self.degree,
        ))
    }

    /// The transpose `F^∨ : D^∨ → C^∨`, with `F^∨[s*, t*] = F[t, s]`.
    pub fn dual(&self) -> ChainMap {
        ChainMap::from_parts_unchecked(
            format!("{}*", self.name),
            Arc::new(self.target.dual()),
            Arc::new(self.source.dual()),
            self.matrix.transpose(),
            self.degree,
        )
    }

    /// `F ⊗ G` on `C ⊗ D`, following the generator order of
    /// [`GradedComplex::tensor`].
    pub fn tensor(&self, other: &ChainMap) -> ChainMap {
        let source = Arc::new(self.source.tensor(&other.source));
        let target = Arc::new(self.target.tensor(&other.target));
        let (sm, tm) = (other.source.rank(), other.target.rank());
        let mut m = PolyMatrix::zeros(target.rank(), source.rank());
        for (t1, s1, p) in self.matrix.entries() {
            for (t2, s2, q) in other.matrix.entries() {
                m.add_to(t1 * tm + t2, s1 * sm + s2, &(p * q));
            }
        }
        ChainMap::from_parts_unchecked(
            format!("{}.{}", self.name, other.name),
            source,
            target,
            m,
            self.degree + other.degree,
        )
    }

    /// Blockwise `F ⊕ G`; degrees must agree.
    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let source = Arc::new(self.source.direct_sum(&other.source));
        let target = Arc::new(self.target.direct_sum(&other.target));
        let (ks, kt) = (self.source.rank(), self.target.rank());
        let mut m = PolyMatrix::zeros(target.rank(), source.rank());
        for (t, s, p) in self.matrix.entries() {
            m.add_to(t, s, p);
        }
        for (t, s, p) in other.matrix.entries() {
            m.add_to(kt + t, ks + s, p);
        }
        Ok(ChainMap::from_parts_unchecked(
            format!("{}+{}", self.name, other.name),
            source,
            target,
            m,
            self.degree,
        ))
    }

    /// Conjugate by a change of basis of the underlying module. `basis` has
    /// the new basis vectors as columns (in old coordinates) and `inverse` is
    /// its inverse; the result is `inverse · F · basis` on `new_complex`.
    pub fn conjugate(
        &self,
        new_complex: Arc<GradedComplex>,
        basis: &PolyMatrix,
        inverse: &PolyMatrix,
    ) -> Result<ChainMap> {
        let m = inverse.mul(&self.matrix).mul(basis);
        ChainMap::new(
            self.name.clone(),
            new_complex.clone(),
            new_complex,
            m,
            self.degree,
        )
    }
}

/// Mapping cone of a degree-0 map `F : C → D`.
///
/// Generators are the source generators (grading + 1, id suffixed with `+`)
/// followed by the target generators; the differential is the block matrix
/// `(∂_C 0; F ∂_D)`. Over F2 the sign on `∂_C` is immaterial.
pub fn cone(f: &ChainMap) -> Result<GradedComplex> {
    if f.degree() != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: f.degree(),
        });
    }
    let (src, tgt) = (f.source(), f.target());
    let k = src.rank();
    let mut taken: std::collections::HashSet<String> =
        tgt.generators().iter().map(|g| g.id.clone()).collect();
    let mut generators = Vec::with_capacity(k + tgt.rank());
    for g in src.generators() {
        let id = uniquify(format!("{}+", g.id), &taken);
        taken.insert(id.clone());
        generators.push(Generator::new(id, g.grading + 1));
    }
    generators.extend(tgt.generators().iter().cloned());
    let n = generators.len();
    let mut d = PolyMatrix::zeros(n, n);
    for (t, s, p) in src.differential().entries() {
        d.add_to(t, s, p);
    }
    for (t, s, p) in f.matrix().entries() {
        d.add_to(k + t, s, p);
    }
    for (t, s, p) in tgt.differential().entries() {
        d.add_to(k + t, k + s, p);
    }
    GradedComplex::from_matrix(format!("cone({})", f.name()), generators, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn two_step(n: u32) -> Arc<GradedComplex> {
        GradedComplex::build(
            "c",
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a".into(), "b".into(), Polynomial::monomial(n).unwrap())],
        )
        .unwrap()
        .into_arc()
    }

    #[test]
    fn rejects_non_chain_maps() {
        let c = two_step(2);
        // a -> a only: d F(a) = U^2 b but F(d a) = 0
        let err = ChainMap::build(
            "f",
            c.clone(),
            c.clone(),
            vec![("a".into(), "a".into(), p("1"))],
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAChainMap { .. }));
        let err = ChainMap::build("g", c.clone(), c, vec![("a".into(), "b".into(), p("1"))], 0)
            .unwrap_err();
        assert!(matches!(err, Error::GradingViolation { .. }));
    }

    #[test]
    fn compose_with_identity() {
        let c = two_step(3);
        let f = ChainMap::scalar(c.clone(), &p("1+U"));
        let id = ChainMap::identity(c);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap().degree(), 0);
    }

    #[test]
    fn cone_of_zero_splits() {
        let c = two_step(1);
        let z = ChainMap::zero(c.clone(), c.clone(), 0);
        let k = cone(&z).unwrap();
        let expect = c.shift(1).direct_sum(&c);
        assert_eq!(k.differential(), expect.differential());
        let gr: Vec<_> = k.generators().iter().map(|g| g.grading).collect();
        assert_eq!(gr, [2, 1, 1, 0]);
        let f = ChainMap::build("x", c.clone(), c, vec![], 1).unwrap();
        assert!(matches!(cone(&f), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn dual_map_is_transpose() {
        let c = two_step(3);
        let f = ChainMap::scalar(c, &p("U"));
        let fd = f.dual();
        assert_eq!(fd.entry(0, 0), p("U"));
        assert!(fd.revalidate().is_ok());
    }
}
