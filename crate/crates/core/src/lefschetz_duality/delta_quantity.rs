use std::sync::Arc;

use super::maps::{cotrace_map, phi_dual, trace_map};
use crate::chain_complex::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::homology::{delta_inverse_of, LaurentChain};
use crate::normal_form::decompose;

/// Second tensor factor applied together with `F` on `C ⊗ C^∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualFactor {
    PhiDual,
    /// Identity instead of `Φ^∨`; only useful as a deliberately broken
    /// variant for mutation tests.
    Identity,
}

/// Where `δ^{-1}` sits in the composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `tr ∘ (F⊗Φ^∨) ∘ δ^{-1} ∘ cotr`
    InverseFirst,
    /// `tr ∘ δ^{-1} ∘ (F⊗Φ^∨) ∘ cotr`
    InverseLast,
}

pub(crate) fn check_endomorphism(c: &GradedComplex, f: &ChainMap) -> Result<()> {
    if f.degree() != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: f.degree(),
        });
    }
    if **f.source() != *c || **f.target() != *c {
        return Err(Error::ComplexMismatch(format!(
            "map `{}` is not an endomorphism of `{}`",
            f.name(),
            c.name()
        )));
    }
    Ok(())
}

fn second_factor(c: &GradedComplex, factor: DualFactor) -> ChainMap {
    match factor {
        DualFactor::PhiDual => phi_dual(c),
        DualFactor::Identity => ChainMap::identity(Arc::new(c.dual())),
    }
}

fn u_inverse_coefficient(x: &LaurentChain) -> bool {
    x.contains(0, -1)
}

/// The U^-1 coefficient of `tr ∘ (F ⊗ G)(w)` for a chain `w` of
/// `(C ⊗ C^∨)^+`. Nonnegative exponents of `w` cannot reach `U^-1`.
pub fn evaluate_on(
    c: &GradedComplex,
    f: &ChainMap,
    w: &LaurentChain,
    factor: DualFactor,
) -> Result<bool> {
    check_endomorphism(c, f)?;
    let fg = f.tensor(&second_factor(c, factor));
    Ok(u_inverse_coefficient(
        &w.apply(fg.matrix()).apply(trace_map(c).matrix()),
    ))
}

/// `Δ(C, F)`: the U^-1 coefficient of `tr ∘ (F⊗Φ^∨) ∘ δ^{-1} ∘ cotr(1)`.
///
/// Requires a degree-0 endomorphism and `H^∞(C) = 0`.
pub fn delta_quantity(c: &GradedComplex, f: &ChainMap) -> Result<bool> {
    delta_quantity_with(c, f, Order::InverseFirst, DualFactor::PhiDual)
}

/// `δ^{-1}(cotr(1))` in `(C ⊗ C^∨)^+`, as a combination of the `H^+` basis.
pub fn cotrace_preimage(c: &GradedComplex) -> Result<LaurentChain> {
    let (t, z) = tensor_and_cotrace(c)?;
    delta_inverse_of(&decompose(&t)?, &z)
}

fn tensor_and_cotrace(c: &GradedComplex) -> Result<(Arc<GradedComplex>, LaurentChain)> {
    let free = decompose(&Arc::new(c.clone()))?
        .normal_form()
        .one_steps()
        .len();
    if free > 0 {
        return Err(Error::InfinityNotZero(free));
    }
    let t = Arc::new(c.tensor(&c.dual()));
    let z = LaurentChain::term(0, 0).apply(cotrace_map(c).matrix());
    Ok((t, z))
}

pub fn delta_quantity_with(
    c: &GradedComplex,
    f: &ChainMap,
    order: Order,
    factor: DualFactor,
) -> Result<bool> {
    check_endomorphism(c, f)?;
    let (t, z) = tensor_and_cotrace(c)?;
    let dec = decompose(&t)?;
    let fg = f.tensor(&second_factor(c, factor));
    let tr = trace_map(c);
    let out = match order {
        Order::InverseFirst => delta_inverse_of(&dec, &z)?.apply(fg.matrix()),
        Order::InverseLast => delta_inverse_of(&dec, &z.apply(fg.matrix()))?,
    };
    Ok(u_inverse_coefficient(&out.apply(tr.matrix())))
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
    fn identity_gives_exponent_parity() {
        for n in 1..=6 {
            let c = two_step(n);
            let id = ChainMap::identity(c.clone());
            assert_eq!(delta_quantity(&c, &id).unwrap(), n % 2 == 1, "n = {n}");
            assert_eq!(
                delta_quantity_with(&c, &id, Order::InverseLast, DualFactor::PhiDual).unwrap(),
                n % 2 == 1
            );
        }
    }

    #[test]
    fn scalar_map() {
        let c = two_step(3);
        let f = ChainMap::scalar(c.clone(), &"1+U".parse().unwrap());
        assert!(delta_quantity(&c, &f).unwrap());
        let f = ChainMap::scalar(c.clone(), &"U+U^2".parse().unwrap());
        assert!(!delta_quantity(&c, &f).unwrap());
    }

    #[test]
    fn mutation_loses_the_value() {
        let c = two_step(3);
        let id = ChainMap::identity(c.clone());
        assert!(!delta_quantity_with(&c, &id, Order::InverseFirst, DualFactor::Identity).unwrap());
    }

    #[test]
    fn preconditions() {
        let c = Arc::new(realize(&NormalForm::new(vec![0], vec![])));
        assert_eq!(
            delta_quantity(&c, &ChainMap::identity(c.clone())),
            Err(Error::InfinityNotZero(1))
        );
        let c = two_step(2);
        let shifted = ChainMap::zero(c.clone(), c.clone(), 1);
        assert!(matches!(
            delta_quantity(&c, &shifted),
            Err(Error::DegreeMismatch {
                expected: 0,
                found: 1
            })
        ));
    }

    #[test]
    fn cotrace_preimage_of_two_step() {
        // w = U^-n · a ⊗ b*; in C ⊗ C^∨ the generator a.b* has index 1.
        let c = two_step(3);
        let t = c.tensor(&c.dual());
        let w = cotrace_preimage(&c).unwrap();
        assert!(crate::homology::homologous_plus(&t, &w, &LaurentChain::term(1, -3)).unwrap());
    }
}
