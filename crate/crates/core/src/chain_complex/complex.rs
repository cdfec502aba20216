use std::collections::HashSet;
use std::sync::Arc;

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::scalar_ring::Polynomial;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub id: String,
    pub grading: i64,
}

impl Generator {
    pub fn new(id: impl Into<String>, grading: i64) -> Self {
        Generator {
            id: id.into(),
            grading,
        }
    }

    pub fn parity(&self) -> i64 {
        self.grading.rem_euclid(2)
    }
}

/// A free, finitely generated chain complex over F2[U].
///
/// The differential lowers the integer grading by one and `U` has degree 0.
/// Entry `(t, s)` of [`GradedComplex::differential`] is the coefficient of
/// generator `t` in the boundary of generator `s`.
///
/// Equality is structural: same ordered generators and same differential.
/// The name only labels the complex in text files.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    name: String,
    generators: Vec<Generator>,
    differential: PolyMatrix,
}

impl PartialEq for GradedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.differential == other.differential
    }
}

impl Eq for GradedComplex {}

/// Checks an entry set against gradings: every nonzero `(t, s)` must satisfy
/// `grading(t) = grading(s) + shift`.
pub(crate) fn check_grading(
    sources: &[Generator],
    targets: &[Generator],
    matrix: &PolyMatrix,
    shift: i64,
) -> Result<()> {
    for (t, s, _) in matrix.entries() {
        if targets[t].grading != sources[s].grading + shift {
            return Err(Error::GradingViolation {
                source_gen: sources[s].id.clone(),
                target: targets[t].id.clone(),
                source_grading: sources[s].grading,
                target_grading: targets[t].grading,
                expected: shift,
            });
        }
    }
    Ok(())
}

/// Makes `id` distinct from everything in `taken` by appending primes.
pub(crate) fn uniquify(id: String, taken: &HashSet<String>) -> String {
    let mut out = id;
    while taken.contains(&out) {
        out.push('\'');
    }
    out
}

impl GradedComplex {
    /// Validates and builds a complex from generators and `(source, target,
    /// entry)` triples. Repeated triples for one pair add up.
    pub fn build(
        name: impl Into<String>,
        generators: Vec<Generator>,
        entries: impl IntoIterator<Item = (String, String, Polynomial)>,
    ) -> Result<Self> {
        let mut seen = std::collections::HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.id.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.id.clone()));
            }
        }
        let n = generators.len();
        let mut d = PolyMatrix::zeros(n, n);
        for (s, t, p) in entries {
            let si = *seen
                .get(&s)
                .ok_or_else(|| Error::UnknownGenerator(s.clone()))?;
            let ti = *seen
                .get(&t)
                .ok_or_else(|| Error::UnknownGenerator(t.clone()))?;
            d.add_to(ti, si, &p);
        }
        Self::from_matrix(name, generators, d)
    }

    /// Validates a complex given directly by its differential matrix.
    pub fn from_matrix(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: PolyMatrix,
    ) -> Result<Self> {
        let mut ids = HashSet::new();
        for g in &generators {
            if !ids.insert(g.id.as_str()) {
                return Err(Error::DuplicateGenerator(g.id.clone()));
            }
        }
        assert_eq!(differential.n_rows(), generators.len());
        assert_eq!(differential.n_cols(), generators.len());
        check_grading(&generators, &generators, &differential, -1)?;
        let square = differential.mul(&differential);
        if let Some((t, s, p)) = square.entries().next() {
            return Err(Error::DifferentialNotSquareZero {
                source_gen: generators[s].id.clone(),
                target: generators[t].id.clone(),
                entry: p.to_string(),
            });
        }
        Ok(GradedComplex {
            name: name.into(),
            generators,
            differential,
        })
    }

    /// Skips validation; callers guarantee both invariants by construction.
    pub(crate) fn from_parts_unchecked(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: PolyMatrix,
    ) -> Self {
        let c = GradedComplex {
            name: name.into(),
            generators,
            differential,
        };
        debug_assert!(c.revalidate().is_ok());
        c
    }

    /// Re-runs the construction checks.
    pub fn revalidate(&self) -> Result<()> {
        Self::from_matrix(
            self.name.clone(),
            self.generators.clone(),
            self.differential.clone(),
        )
        .map(|_| ())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn grading(&self, i: usize) -> i64 {
        self.generators[i].grading
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    pub fn differential(&self) -> &PolyMatrix {
        &self.differential
    }

    /// Entry `d[target, source]`, zero if absent.
    pub fn entry(&self, target: usize, source: usize) -> Polynomial {
        self.differential
            .get(target, source)
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    }

    /// Largest U-exponent appearing in the differential.
    pub fn max_entry_degree(&self) -> u32 {
        self.differential.max_degree().unwrap_or(0)
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// `C^∨ = Hom(C, F2[U])`: generator `g*` in grading `-grading(g)`, and
    /// the transposed differential.
    pub fn dual(&self) -> GradedComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(format!("{}*", g.id), -g.grading))
            .collect();
        GradedComplex::from_parts_unchecked(
            format!("{}*", self.name),
            generators,
            self.differential.transpose(),
        )
    }

    /// `C ⊗ D` with generators `g.h` ordered lexicographically (index
    /// `i·|D| + j`) and differential `∂g⊗h + g⊗∂h`.
    pub fn tensor(&self, other: &GradedComplex) -> GradedComplex {
        let m = other.rank();
        let n = self.rank() * m;
        let mut generators = Vec::with_capacity(n);
        for g in &self.generators {
            for h in &other.generators {
                generators.push(Generator::new(
                    format!("{}.{}", g.id, h.id),
                    g.grading + h.grading,
                ));
            }
        }
        // g.h ids can collide when ids themselves contain dots
        let mut taken = HashSet::new();
        for g in generators.iter_mut() {
            let id = uniquify(std::mem::take(&mut g.id), &taken);
            taken.insert(id.clone());
            g.id = id;
        }
        let mut d = PolyMatrix::zeros(n, n);
        for (t, s, p) in self.differential.entries() {
            for j in 0..m {
                d.add_to(t * m + j, s * m + j, p);
            }
        }
        for (t, s, p) in other.differential.entries() {
            for i in 0..self.rank() {
                d.add_to(i * m + t, i * m + s, p);
            }
        }
        GradedComplex::from_parts_unchecked(format!("{}.{}", self.name, other.name), generators, d)
    }

    /// Blockwise direct sum; colliding ids on the right get primes appended.
    pub fn direct_sum(&self, other: &GradedComplex) -> GradedComplex {
        let mut taken: HashSet<String> = self.generators.iter().map(|g| g.id.clone()).collect();
        let mut generators = self.generators.clone();
        for g in &other.generators {
            let id = uniquify(g.id.clone(), &taken);
            taken.insert(id.clone());
            generators.push(Generator::new(id, g.grading));
        }
        let k = self.rank();
        let n = generators.len();
        let mut d = PolyMatrix::zeros(n, n);
        for (t, s, p) in self.differential.entries() {
            d.add_to(t, s, p);
        }
        for (t, s, p) in other.differential.entries() {
            d.add_to(k + t, k + s, p);
        }
        GradedComplex::from_parts_unchecked(format!("{}+{}", self.name, other.name), generators, d)
    }

    /// Adds `k` to every grading.
    pub fn shift(&self, k: i64) -> GradedComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(g.id.clone(), g.grading + k))
            .collect();
        GradedComplex {
            name: self.name.clone(),
            generators,
            differential: self.differential.clone(),
        }
    }

    /// Generator-wise relabeling (for comparisons up to canonical isomorphism).
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<GradedComplex> {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(f(&g.id), g.grading))
            .collect();
        GradedComplex::from_matrix(self.name.clone(), generators, self.differential.clone())
    }

    /// Reorders generators: position `i` of the result is generator
    /// `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> GradedComplex {
        assert_eq!(order.len(), self.rank());
        let mut inverse = vec![0; order.len()];
        for (i, &o) in order.iter().enumerate() {
            inverse[o] = i;
        }
        let generators = order.iter().map(|&o| self.generators[o].clone()).collect();
        let mut d = PolyMatrix::zeros(self.rank(), self.rank());
        for (t, s, p) in self.differential.entries() {
            d.add_to(inverse[t], inverse[s], p);
        }
        GradedComplex::from_parts_unchecked(self.name.clone(), generators, d)
    }

    /// The one-generator complex `F2[U]` in grading 0 (target of the trace).
    pub fn ground(name: impl Into<String>) -> GradedComplex {
        GradedComplex {
            name: name.into(),
            generators: vec![Generator::new("1", 0)],
            differential: PolyMatrix::zeros(1, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn two_step(n: u32) -> GradedComplex {
        GradedComplex::build(
            "c",
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            vec![("a".into(), "b".into(), Polynomial::monomial(n).unwrap())],
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(two_step(3).entry(1, 0), p("U^3"));
        let single = GradedComplex::build("x", vec![Generator::new("x", 0)], Vec::new()).unwrap();
        assert_eq!(single.rank(), 1);
        let err = GradedComplex::build(
            "bad",
            vec![
                Generator::new("a", 1),
                Generator::new("b", 0),
                Generator::new("c", -1),
            ],
            vec![
                ("a".into(), "b".into(), p("U")),
                ("b".into(), "c".into(), p("U")),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::DifferentialNotSquareZero {
                source_gen: "a".into(),
                target: "c".into(),
                entry: "U^2".into()
            }
        );
    }

    #[test]
    fn build_rejects_bad_input() {
        let dup = GradedComplex::build(
            "d",
            vec![Generator::new("a", 0), Generator::new("a", 1)],
            Vec::new(),
        );
        assert_eq!(dup.unwrap_err(), Error::DuplicateGenerator("a".into()));
        let grading = GradedComplex::build(
            "g",
            vec![Generator::new("a", 0), Generator::new("b", 0)],
            vec![("a".into(), "b".into(), p("U"))],
        );
        assert!(matches!(grading, Err(Error::GradingViolation { .. })));
        let unknown = GradedComplex::build(
            "u",
            vec![Generator::new("a", 0)],
            vec![("a".into(), "z".into(), p("U"))],
        );
        assert_eq!(unknown.unwrap_err(), Error::UnknownGenerator("z".into()));
    }

    #[test]
    fn dual_of_two_step() {
        let d = two_step(3).dual();
        assert_eq!(d.generators()[0], Generator::new("a*", -1));
        assert_eq!(d.generators()[1], Generator::new("b*", 0));
        // b* -> U^3 a*
        assert_eq!(d.entry(0, 1), p("U^3"));
        let back = d
            .dual()
            .relabel(|id| id.trim_end_matches("**").to_string())
            .unwrap();
        assert_eq!(back, two_step(3));
    }

    #[test]
    fn tensor_diamond() {
        let c = two_step(2);
        let t = c.tensor(&c.dual());
        let ids: Vec<_> = t.generators().iter().map(|g| g.id.as_str()).collect();
        assert_eq!(ids, ["a.a*", "a.b*", "b.a*", "b.b*"]);
        let gr: Vec<_> = t.generators().iter().map(|g| g.grading).collect();
        assert_eq!(gr, [0, 1, -1, 0]);
        assert_eq!(t.differential().nnz(), 4);
        for (_, _, e) in t.differential().entries() {
            assert_eq!(e, &p("U^2"));
        }
    }

    #[test]
    fn tensor_with_unit_and_shift() {
        let c = two_step(3);
        let t = c.tensor(&GradedComplex::ground("k"));
        assert_eq!(t.differential(), c.differential());
        assert_eq!(c.shift(0), c);
        let s = c.direct_sum(&c);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.generators()[2].id, "a'");
        assert_eq!(s.entry(3, 2), p("U^3"));
    }
}
