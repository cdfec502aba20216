use std::sync::Arc;

use serde::Serialize;

use crate::chain_complex::{Generator, GradedComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::scalar_ring::{LocalScalar, Polynomial, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoStep {
    pub grading_a: i64,
    pub exponent: u32,
}

/// The isomorphism type of a complex over F2[[U]]: gradings of the one-step
/// summands and `(grading(a), n)` for each summand `a --U^n--> b`.
///
/// Both lists are kept sorted, so equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    one_steps: Vec<i64>,
    two_steps: Vec<TwoStep>,
}

impl NormalForm {
    /// Panics on a zero exponent; those summands are acyclic and never part
    /// of a normal form.
    pub fn new(mut one_steps: Vec<i64>, mut two_steps: Vec<TwoStep>) -> Self {
        assert!(
            two_steps.iter().all(|t| t.exponent > 0),
            "two-step exponents must be positive"
        );
        one_steps.sort_unstable();
        two_steps.sort_unstable();
        NormalForm {
            one_steps,
            two_steps,
        }
    }

    pub fn one_steps(&self) -> &[i64] {
        &self.one_steps
    }

    pub fn two_steps(&self) -> &[TwoStep] {
        &self.two_steps
    }

    pub fn rank(&self) -> usize {
        self.one_steps.len() + 2 * self.two_steps.len()
    }

    pub fn max_exponent(&self) -> u32 {
        self.two_steps.iter().map(|t| t.exponent).max().unwrap_or(0)
    }

    /// Sorted exponent multiset of the two-step summands.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.two_steps.iter().map(|t| t.exponent).collect();
        e.sort_unstable();
        e
    }

    pub fn is_torsion(&self) -> bool {
        self.one_steps.is_empty()
    }
}

/// One summand of a [`Decomposition`]; indices refer to the adapted basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    OneStep {
        gen: usize,
    },
    TwoStep {
        a: usize,
        b: usize,
        exponent: u32,
    },
    /// A pair `a --unit--> b`, acyclic over F2[[U]].
    Cancelled {
        a: usize,
        b: usize,
    },
}

/// Result of reducing a complex over F2[U]_(U).
///
/// The adapted basis `e'_k = Σ_g basis[g][k] · e_g` satisfies `∂e'_a = U^n e'_b`
/// for each two-step, `∂e'_a = e'_b` for each cancelled pair and `∂e'_x = 0`
/// for each one-step. `inverse` is the inverse change of basis.
#[derive(Clone, Debug)]
pub struct Decomposition {
    complex: Arc<GradedComplex>,
    summands: Vec<Summand>,
    basis: Vec<Vec<LocalScalar>>,
    inverse: Vec<Vec<LocalScalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneStepEntry {
    pub grading: i64,
}

/// Serialized classification. Field order is the output key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub one_steps: Vec<OneStepEntry>,
    pub two_steps: Vec<TwoStep>,
    pub cancelled_pairs: usize,
}

impl Decomposition {
    pub fn complex(&self) -> &Arc<GradedComplex> {
        &self.complex
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn cancelled_pairs(&self) -> usize {
        self.summands
            .iter()
            .filter(|s| matches!(s, Summand::Cancelled { .. }))
            .count()
    }

    pub fn normal_form(&self) -> NormalForm {
        let c = &self.complex;
        let mut ones = Vec::new();
        let mut twos = Vec::new();
        for s in &self.summands {
            match *s {
                Summand::OneStep { gen } => ones.push(c.grading(gen)),
                Summand::TwoStep { a, exponent, .. } => twos.push(TwoStep {
                    grading_a: c.grading(a),
                    exponent,
                }),
                Summand::Cancelled { .. } => {}
            }
        }
        NormalForm::new(ones, twos)
    }

    /// Coefficient of original generator `g` in adapted basis vector `k`.
    pub fn basis_coefficient(&self, g: usize, k: usize) -> &LocalScalar {
        &self.basis[g][k]
    }

    /// Coefficient of adapted basis vector `k` in original generator `g`.
    pub fn inverse_coefficient(&self, k: usize, g: usize) -> &LocalScalar {
        &self.inverse[k][g]
    }

    /// Adapted basis vector `k` scaled by the lcm of its denominators, so
    /// that it has polynomial coefficients. The scale factor is a unit of
    /// F2[[U]], so the result spans the same F2[[U]]-line.
    pub fn polynomial_basis_vector(&self, k: usize) -> Vec<Polynomial> {
        let column: Vec<&LocalScalar> = (0..self.complex.rank())
            .map(|g| &self.basis[g][k])
            .collect();
        clear_denominators(&column)
    }

    /// The first `prec` power-series coefficients of each entry of adapted
    /// basis vector `k`.
    pub fn truncated_basis_vector(&self, k: usize, prec: usize) -> Vec<Polynomial> {
        (0..self.complex.rank())
            .map(|g| self.basis[g][k].series(prec))
            .collect()
    }

    /// Report with arrays sorted by grading, then exponent.
    pub fn report(&self) -> ClassificationReport {
        let nf = self.normal_form();
        ClassificationReport {
            one_steps: nf
                .one_steps()
                .iter()
                .map(|&grading| OneStepEntry { grading })
                .collect(),
            two_steps: nf.two_steps().to_vec(),
            cancelled_pairs: self.cancelled_pairs(),
        }
    }
}

/// Multiplies a vector of local scalars by the lcm of their denominators.
pub(crate) fn clear_denominators(entries: &[&LocalScalar]) -> Vec<Polynomial> {
    let mut lcm = Polynomial::one();
    for e in entries {
        let d = e.denominator();
        if !d.is_one() {
            let g = crate::scalar_ring::poly_gcd(&lcm, d).expect("denominators are nonzero");
            lcm = &lcm * &d.div_exact(&g);
        }
    }
    entries
        .iter()
        .map(|e| e.numerator() * &lcm.div_exact(e.denominator()))
        .collect()
}

struct Reduction {
    m: Vec<Vec<LocalScalar>>,
    p: Vec<Vec<LocalScalar>>,
    q: Vec<Vec<LocalScalar>>,
}

impl Reduction {
    /// Basis change `e_i ← e_i + c·e_j`, i.e. `M ← E⁻¹ M E`, `P ← P E`,
    /// `Q ← E⁻¹ Q` with `E = I + c·E_ji`.
    fn add_multiple(&mut self, i: usize, j: usize, c: &LocalScalar) {
        if c.is_zero() {
            return;
        }
        let n = self.m.len();
        for r in 0..n {
            if !self.m[r][j].is_zero() {
                let delta = c * &self.m[r][j];
                self.m[r][i] = &self.m[r][i] + &delta;
            }
            if !self.p[r][j].is_zero() {
                let delta = c * &self.p[r][j];
                self.p[r][i] = &self.p[r][i] + &delta;
            }
        }
        for col in 0..n {
            if !self.m[i][col].is_zero() {
                let delta = c * &self.m[i][col];
                self.m[j][col] = &self.m[j][col] + &delta;
            }
            if !self.q[i][col].is_zero() {
                let delta = c * &self.q[i][col];
                self.q[j][col] = &self.q[j][col] + &delta;
            }
        }
    }

    /// Basis change `e_i ← u·e_i` for a unit `u`.
    fn scale(&mut self, i: usize, u: &LocalScalar) -> Result<()> {
        let inv = u.inverse()?;
        let n = self.m.len();
        for r in 0..n {
            if !self.m[r][i].is_zero() {
                self.m[r][i] = &self.m[r][i] * u;
            }
            if !self.p[r][i].is_zero() {
                self.p[r][i] = &self.p[r][i] * u;
            }
        }
        for col in 0..n {
            if !self.m[i][col].is_zero() {
                self.m[i][col] = &self.m[i][col] * &inv;
            }
            if !self.q[i][col].is_zero() {
                self.q[i][col] = &self.q[i][col] * &inv;
            }
        }
        Ok(())
    }
}

fn identity(n: usize) -> Vec<Vec<LocalScalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LocalScalar::one()
                    } else {
                        LocalScalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Reduces `c` to one-step, two-step and cancelled summands by pivoting in
/// F2[U]_(U).
///
/// The pivot is always an entry of minimal U-adic valuation among the
/// unreduced generators, ties broken by smallest (row, column). Minimality
/// makes every clearing multiplier a local scalar; `∂² = 0` makes the pivot
/// pair decouple from the rest once its row and column are cleared.
pub fn decompose(c: &Arc<GradedComplex>) -> Result<Decomposition> {
    let n = c.rank();
    let mut m = vec![vec![LocalScalar::zero(); n]; n];
    for (t, s, p) in c.differential().entries() {
        m[t][s] = LocalScalar::from(p.clone());
    }
    let mut red = Reduction {
        m,
        p: identity(n),
        q: identity(n),
    };
    let mut used = vec![false; n];
    let mut summands = Vec::new();
    loop {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for t in (0..n).filter(|&t| !used[t]) {
            for s in (0..n).filter(|&s| !used[s]) {
                let v = red.m[t][s].valuation();
                if v.is_infinite() {
                    continue;
                }
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, t, s));
                }
            }
        }
        let Some((_, t, s)) = best else { break };
        let pivot = red.m[t][s].clone();
        for t2 in 0..n {
            if t2 != t && !red.m[t2][s].is_zero() {
                let c = red.m[t2][s].div(&pivot)?;
                red.add_multiple(t, t2, &c);
            }
        }
        for s2 in 0..n {
            if s2 != s && !red.m[t][s2].is_zero() {
                let c = red.m[t][s2].div(&pivot)?;
                red.add_multiple(s2, s, &c);
            }
        }
        let (v, unit) = pivot.split_unit().expect("pivot is nonzero");
        if !unit.is_one() {
            red.scale(t, &unit)?;
        }
        let decoupled = (0..n).all(|k| {
            red.m[k][t].is_zero()
                && red.m[s][k].is_zero()
                && (k == t || red.m[k][s].is_zero())
                && (k == s || red.m[t][k].is_zero())
        });
        if !decoupled {
            return Err(Error::CrossCheck(format!(
                "pivot ({}, {}) did not decouple",
                c.generators()[t].id,
                c.generators()[s].id
            )));
        }
        used[t] = true;
        used[s] = true;
        summands.push(if v == 0 {
            Summand::Cancelled { a: s, b: t }
        } else {
            Summand::TwoStep {
                a: s,
                b: t,
                exponent: v,
            }
        });
    }
    for g in (0..n).filter(|&g| !used[g]) {
        summands.push(Summand::OneStep { gen: g });
    }
    Ok(Decomposition {
        complex: c.clone(),
        summands,
        basis: red.p,
        inverse: red.q,
    })
}

/// The normal form of `c` over F2[[U]].
pub fn classify(c: &GradedComplex) -> Result<NormalForm> {
    Ok(decompose(&Arc::new(c.clone()))?.normal_form())
}

/// The model complex of a normal form: pairs `a_i --U^n--> b_i` first, then
/// one-step generators `x_j`.
pub fn realize(nf: &NormalForm) -> GradedComplex {
    let mut generators = Vec::with_capacity(nf.rank());
    for (i, t) in nf.two_steps().iter().enumerate() {
        generators.push(Generator::new(format!("a{i}"), t.grading_a));
        generators.push(Generator::new(format!("b{i}"), t.grading_a - 1));
    }
    for (j, &g) in nf.one_steps().iter().enumerate() {
        generators.push(Generator::new(format!("x{j}"), g));
    }
    let n = generators.len();
    let mut d = PolyMatrix::zeros(n, n);
    for (i, t) in nf.two_steps().iter().enumerate() {
        d.set(
            2 * i + 1,
            2 * i,
            Polynomial::monomial(t.exponent).expect("normal-form exponent within bounds"),
        );
    }
    GradedComplex::from_matrix("model", generators, d).expect("model complexes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(gens: &[(&str, i64)], entries: &[(&str, &str, &str)]) -> Arc<GradedComplex> {
        GradedComplex::build(
            "t",
            gens.iter().map(|(id, g)| Generator::new(*id, *g)).collect(),
            entries
                .iter()
                .map(|(s, t, p)| (s.to_string(), t.to_string(), p.parse().unwrap())),
        )
        .unwrap()
        .into_arc()
    }

    #[test]
    fn unit_is_absorbed() {
        let c = complex(&[("a", 1), ("b", 0)], &[("a", "b", "U^2+U^3")]);
        let d = decompose(&c).unwrap();
        assert_eq!(
            d.normal_form(),
            NormalForm::new(
                vec![],
                vec![TwoStep {
                    grading_a: 1,
                    exponent: 2
                }]
            )
        );
        // b' = (1+U) b
        assert_eq!(d.basis_coefficient(1, 1).to_string(), "1+U");
    }

    #[test]
    fn one_step_and_cancelled() {
        let c = complex(&[("x", 0)], &[]);
        assert_eq!(classify(&c).unwrap(), NormalForm::new(vec![0], vec![]));
        let c = complex(&[("a", 1), ("b", 0)], &[("a", "b", "1+U")]);
        let d = decompose(&c).unwrap();
        assert_eq!(d.normal_form(), NormalForm::default());
        assert_eq!(d.cancelled_pairs(), 1);
        assert_eq!(
            serde_json::to_string(&d.report()).unwrap(),
            r#"{"one_steps":[],"two_steps":[],"cancelled_pairs":1}"#
        );
    }

    #[test]
    fn realize_examples() {
        let nf = NormalForm::new(
            vec![],
            vec![TwoStep {
                grading_a: 1,
                exponent: 3,
            }],
        );
        let c = realize(&nf);
        assert_eq!(c.generators()[0], Generator::new("a0", 1));
        assert_eq!(c.generators()[1], Generator::new("b0", 0));
        assert_eq!(c.entry(1, 0).to_string(), "U^3");
        let c = realize(&NormalForm::new(vec![2, 0], vec![]));
        assert_eq!(c.rank(), 2);
        assert!(c.differential().is_zero());
        assert_eq!(realize(&NormalForm::default()).rank(), 0);
    }

    #[test]
    fn mixed_complex() {
        // a -> U b + U^2 c, with c also hit by e via U^3; ∂² = 0 trivially.
        let c = complex(
            &[("a", 1), ("e", 1), ("b", 0), ("c", 0), ("x", 5)],
            &[("a", "b", "U"), ("a", "c", "U^2"), ("e", "c", "U^3+U^4")],
        );
        let d = decompose(&c).unwrap();
        assert_eq!(
            d.normal_form(),
            NormalForm::new(
                vec![5],
                vec![
                    TwoStep {
                        grading_a: 1,
                        exponent: 1
                    },
                    TwoStep {
                        grading_a: 1,
                        exponent: 3
                    }
                ]
            )
        );
    }
}
