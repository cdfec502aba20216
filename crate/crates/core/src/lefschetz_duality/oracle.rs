use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::delta_quantity::check_endomorphism;
use crate::chain_complex::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::homology::window::{ImageModel, Window};
use crate::normal_form::decompose;

/// Brute-force Lefschetz number of `F_*` on `H^+`, with diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: bool,
    pub h_plus_dimension: usize,
    /// Trace of `F_*` on each graded piece of `H^+`.
    pub traces_by_grading: BTreeMap<i64, bool>,
    /// Truncation width of the primary run (the check run uses twice this).
    pub window: i64,
}

/// Matrix of a map on `H^+` in the basis of a truncated model, with the
/// grading of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusAction {
    pub gradings: Vec<i64>,
    /// `matrix[j][i]`: coefficient of basis vector `i` in the image of `j`.
    pub matrix: Vec<Vec<bool>>,
}

/// `H^+` as the image of `H(U^-w C / C)` in `H(U^{-w-E} C / C)`.
fn plus_model(c: &GradedComplex, e: i64, w: i64) -> ImageModel<'_> {
    ImageModel::new(c, Window::new(-w, 0), Window::new(-w - e, 0))
}

fn torsion_exponent(c: &GradedComplex) -> Result<i64> {
    let nf = decompose(&Arc::new(c.clone()))?.normal_form();
    if !nf.is_torsion() {
        return Err(Error::InfinityNotZero(nf.one_steps().len()));
    }
    Ok(nf.max_exponent() as i64)
}

fn action_in(model: &ImageModel, f: &ChainMap) -> Result<PlusAction> {
    let matrix = model
        .matrix_of(f)
        .ok_or_else(|| Error::CrossCheck(format!("`{}` does not preserve H^+", f.name())))?;
    Ok(PlusAction {
        gradings: model.rep_gradings.clone(),
        matrix,
    })
}

/// The action of a chain map `C → C` of any degree on `H^+(C)`, in the basis
/// of the truncated model. Requires `H^∞(C) = 0`.
pub fn plus_action(c: &GradedComplex, f: &ChainMap) -> Result<PlusAction> {
    if **f.source() != *c || **f.target() != *c {
        return Err(Error::ComplexMismatch(format!(
            "map `{}` is not an endomorphism of `{}`",
            f.name(),
            c.name()
        )));
    }
    let e = torsion_exponent(c)?;
    action_in(&plus_model(c, e, 2 * e + 2), f)
}

fn run(c: &GradedComplex, f: &ChainMap, e: i64, w: i64) -> Result<OracleResult> {
    let model = plus_model(c, e, w);
    let action = action_in(&model, f)?;
    let mut traces = BTreeMap::new();
    for (j, &k) in action.gradings.iter().enumerate() {
        let t = traces.entry(k).or_insert(false);
        *t ^= action.matrix[j][j];
    }
    Ok(OracleResult {
        value: traces.values().fold(false, |acc, &t| acc ^ t),
        h_plus_dimension: model.dim(),
        traces_by_grading: traces,
        window: w,
    })
}

/// The trace over F2 of `F_*: H^+(C) → H^+(C)`, computed by Gaussian
/// elimination on a truncation of `C^+`. Over F2 the graded sign split of
/// the Lefschetz number is immaterial; per-grading traces are still reported.
///
/// The truncation width is `2E + 2` for the largest two-step exponent `E`;
/// a second run at twice the width must agree.
pub fn lefschetz_oracle_details(c: &GradedComplex, f: &ChainMap) -> Result<OracleResult> {
    check_endomorphism(c, f)?;
    let e = torsion_exponent(c)?;
    let w = 2 * e + 2;
    let first = run(c, f, e, w)?;
    let second = run(c, f, e, 2 * w)?;
    if first.h_plus_dimension != second.h_plus_dimension
        || first.traces_by_grading != second.traces_by_grading
    {
        return Err(Error::CrossCheck(format!(
            "truncation at width {w} and {} disagree",
            2 * w
        )));
    }
    Ok(first)
}

pub fn lefschetz_oracle(c: &GradedComplex, f: &ChainMap) -> Result<bool> {
    Ok(lefschetz_oracle_details(c, f)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{realize, NormalForm, TwoStep};

    fn two_step(n: u32) -> Arc<GradedComplex> {
        Arc::new(realize(&NormalForm::new(
            vec![],
            vec![TwoStep {
                grading_a: 1,
                exponent: n,
            }],
        )))
    }

    #[test]
    fn identity_trace_is_exponent() {
        for n in 1..=5 {
            let c = two_step(n);
            let r = lefschetz_oracle_details(&c, &ChainMap::identity(c.clone())).unwrap();
            assert_eq!(r.value, n % 2 == 1);
            assert_eq!(r.h_plus_dimension, n as usize);
            assert_eq!(r.traces_by_grading, BTreeMap::from([(1, n % 2 == 1)]));
        }
    }

    #[test]
    fn zero_and_u_multiples_vanish() {
        let c = Arc::new(realize(&NormalForm::new(
            vec![],
            vec![
                TwoStep {
                    grading_a: 1,
                    exponent: 3,
                },
                TwoStep {
                    grading_a: 2,
                    exponent: 2,
                },
            ],
        )));
        assert!(!lefschetz_oracle(&c, &ChainMap::zero(c.clone(), c.clone(), 0)).unwrap());
        assert!(
            !lefschetz_oracle(&c, &ChainMap::scalar(c.clone(), &"U".parse().unwrap())).unwrap()
        );
        assert!(lefschetz_oracle(&c, &ChainMap::identity(c.clone())).unwrap());
    }

    #[test]
    fn needs_torsion() {
        let c = Arc::new(realize(&NormalForm::new(vec![1], vec![])));
        assert_eq!(
            lefschetz_oracle(&c, &ChainMap::identity(c.clone())),
            Err(Error::InfinityNotZero(1))
        );
    }
}
