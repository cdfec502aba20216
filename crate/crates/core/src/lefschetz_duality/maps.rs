use std::sync::Arc;

use crate::chain_complex::{ChainMap, GradedComplex, PolyMatrix};
use crate::scalar_ring::Polynomial;

/// `Φ`: the differential with every entry replaced by its formal derivative.
/// Lowers grading by one and anticommutes (in F2, commutes) with `∂`.
pub fn phi(c: &GradedComplex) -> ChainMap {
    let c = Arc::new(c.clone());
    let m = c.differential().map_entries(Polynomial::formal_derivative);
    ChainMap::new("phi", c.clone(), c, m, -1)
        .expect("the derivative of a differential is a chain map")
}

/// `Φ^∨` on `C^∨`, the transpose of [`phi`].
pub fn phi_dual(c: &GradedComplex) -> ChainMap {
    phi(c).dual().with_name("phi*")
}

/// `tr : C ⊗ C^∨ → F2[U]`, `g ⊗ h* ↦ δ_{gh}`.
pub fn trace_map(c: &GradedComplex) -> ChainMap {
    let n = c.rank();
    let mut m = PolyMatrix::zeros(1, n * n);
    for i in 0..n {
        m.set(0, i * n + i, Polynomial::one());
    }
    ChainMap::new(
        "tr",
        Arc::new(c.tensor(&c.dual())),
        Arc::new(GradedComplex::ground("F2[U]")),
        m,
        0,
    )
    .expect("the trace is a chain map")
}

/// `cotr : F2[U] → C ⊗ C^∨`, `1 ↦ Σ_g g ⊗ g*`.
pub fn cotrace_map(c: &GradedComplex) -> ChainMap {
    let n = c.rank();
    let mut m = PolyMatrix::zeros(n * n, 1);
    for i in 0..n {
        m.set(i * n + i, 0, Polynomial::one());
    }
    ChainMap::new(
        "cotr",
        Arc::new(GradedComplex::ground("F2[U]")),
        Arc::new(c.tensor(&c.dual())),
        m,
        0,
    )
    .expect("the cotrace is a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::LaurentChain;
    use crate::normal_form::{random_complex, realize, ComplexSpec, NormalForm, TwoStep};

    fn two_step(n: u32) -> GradedComplex {
        realize(&NormalForm::new(
            vec![],
            vec![TwoStep {
                grading_a: 1,
                exponent: n,
            }],
        ))
    }

    #[test]
    fn phi_on_two_steps() {
        let p = phi(&two_step(3));
        assert_eq!(p.entry(1, 0).to_string(), "U^2");
        assert_eq!(p.degree(), -1);
        assert!(phi(&two_step(2)).matrix().is_zero());
        let pd = phi_dual(&two_step(3));
        // dual generators: a* = 0, b* = 1; Φ^∨(b*) = U^2 a*
        assert_eq!(pd.entry(0, 1).to_string(), "U^2");
        assert!(phi_dual(&realize(&NormalForm::new(vec![0], vec![])))
            .matrix()
            .is_zero());
    }

    #[test]
    fn phi_dual_is_phi_of_dual() {
        for seed in 0..50 {
            let (_, c) = random_complex(
                seed,
                ComplexSpec {
                    max_rank: 8,
                    max_exponent: 5,
                    max_steps: 20,
                    allow_one_steps: true,
                },
            );
            assert_eq!(phi_dual(&c), phi(&c.dual()));
        }
    }

    #[test]
    fn trace_and_cotrace() {
        let c = realize(&NormalForm::new(
            vec![0],
            vec![TwoStep {
                grading_a: 1,
                exponent: 2,
            }],
        ));
        let tr = trace_map(&c);
        let cotr = cotrace_map(&c);
        let one = LaurentChain::term(0, 0);
        let z = one.apply(cotr.matrix());
        assert_eq!(z.len(), 3);
        assert_eq!(z.apply(tr.matrix()), LaurentChain::term(0, 0));
        // tr(U x ⊗ U^2 x*) = U^3 for x = x0 (index 2)
        let n = c.rank();
        let x = LaurentChain::term(2 * n + 2, 3);
        assert_eq!(x.apply(tr.matrix()), LaurentChain::term(0, 3));
        assert!(LaurentChain::term(1, 0).apply(tr.matrix()).is_zero());
    }
}
