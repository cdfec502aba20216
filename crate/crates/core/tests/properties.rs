use std::sync::Arc;

use proptest::prelude::*;

use uchain::chain_complex::{ChainMap, GradedComplex};
use uchain::homology::{f2_pairing, LaurentChain};
use uchain::lefschetz_duality::{cotrace_preimage, delta_quantity, evaluate_on, DualFactor};
use uchain::normal_form::{
    classify, random_basis_change_tracked, random_chain_map, random_complex, ComplexSpec,
};
use uchain::scalar_ring::{LocalScalar, Polynomial, Valuation};

fn poly_from_mask(mask: u32) -> Polynomial {
    Polynomial::from_exponents((0..32).filter(|i| mask >> i & 1 == 1)).unwrap()
}

fn poly() -> impl Strategy<Value = Polynomial> {
    (0u32..1 << 12).prop_map(poly_from_mask)
}

fn unit() -> impl Strategy<Value = Polynomial> {
    (0u32..1 << 8).prop_map(|m| poly_from_mask(m << 1 | 1))
}

fn local() -> impl Strategy<Value = LocalScalar> {
    (poly(), unit()).prop_map(|(n, d)| LocalScalar::new(n, d).unwrap())
}

fn same(x: &LocalScalar, y: &LocalScalar) -> bool {
    (x + y).is_zero()
}

fn complex(seed: u64, max_rank: usize, allow_one_steps: bool) -> Arc<GradedComplex> {
    let spec = ComplexSpec {
        max_rank,
        max_exponent: 4,
        max_steps: 12,
        allow_one_steps,
    };
    Arc::new(random_complex(seed, spec).1)
}

fn chain(rank: usize, terms: &[(usize, i64)]) -> LaurentChain {
    LaurentChain::from_terms(terms.iter().map(|&(g, e)| (g % rank, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(p in poly(), q in poly()) {
        let lhs = (&p * &q).formal_derivative();
        let rhs = &(&p.formal_derivative() * &q) + &(&p * &q.formal_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn valuation_is_additive(p in poly(), q in poly()) {
        prop_assert_eq!((&p * &q).valuation(), p.valuation() + q.valuation());
        if p.is_zero() {
            prop_assert_eq!(p.valuation(), Valuation::Infinite);
        }
    }

    #[test]
    fn local_ring_laws(a in local(), b in local(), c in local()) {
        prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!(same(&(&a * &b), &(&b * &a)));
        prop_assert!(same(&(&a * &LocalScalar::one()), &a));
        prop_assert_eq!(a.is_unit(), a.valuation() == Valuation::Finite(0));
        if a.is_unit() {
            prop_assert!(same(&(&a * &a.inverse().unwrap()), &LocalScalar::one()));
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn tensor_is_associative_and_commutative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (complex(s1, 4, true), complex(s2, 4, true), complex(s3, 3, true));
        let ab = a.tensor(&b);
        prop_assert_eq!(classify(&ab).unwrap(), classify(&b.tensor(&a)).unwrap());
        prop_assert_eq!(
            classify(&ab.tensor(&c)).unwrap(),
            classify(&a.tensor(&b.tensor(&c))).unwrap()
        );
    }

    #[test]
    fn dual_of_tensor(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (complex(s1, 4, true), complex(s2, 4, true));
        prop_assert_eq!(
            classify(&a.tensor(&b).dual()).unwrap(),
            classify(&a.dual().tensor(&b.dual())).unwrap()
        );
        let aa = a.dual().dual();
        prop_assert_eq!(aa.differential(), a.differential());
        prop_assert!((0..a.rank()).all(|i| aa.grading(i) == a.grading(i)));
    }

    #[test]
    fn pairing_is_adjoint_to_differential(
        seed in any::<u64>(),
        z in prop::collection::vec((0usize..16, -6i64..6), 0..12),
        w in prop::collection::vec((0usize..16, -6i64..6), 0..12),
    ) {
        let c = complex(seed, 8, true);
        let (z, w) = (chain(c.rank(), &z), chain(c.rank(), &w));
        prop_assert_eq!(
            f2_pairing(&z.boundary(&c), &w),
            f2_pairing(&z, &w.boundary(&c.dual()))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn delta_is_additive_over_direct_sums(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (complex(s1, 4, false), complex(s2, 4, false));
        let f = random_chain_map(&a, s1 ^ 1).unwrap();
        let g = random_chain_map(&b, s2 ^ 1).unwrap();
        let fg = f.direct_sum(&g).unwrap();
        let sum = fg.source().clone();
        prop_assert_eq!(
            delta_quantity(&sum, &fg).unwrap(),
            delta_quantity(&a, &f).unwrap() ^ delta_quantity(&b, &g).unwrap()
        );
    }

    #[test]
    fn delta_is_basis_independent(seed in any::<u64>(), steps in 0usize..25) {
        let c = complex(seed, 6, false);
        let f = random_chain_map(&c, seed ^ 2).unwrap();
        let (c2, change) = random_basis_change_tracked(&c, seed ^ 3, steps);
        let c2 = Arc::new(c2);
        let f2 = f.conjugate(c2.clone(), &change.basis, &change.inverse).unwrap();
        prop_assert_eq!(delta_quantity(&c, &f).unwrap(), delta_quantity(&c2, &f2).unwrap());
    }

    #[test]
    fn delta_ignores_the_representative(
        seed in any::<u64>(),
        u in prop::collection::vec((0usize..64, -8i64..3), 0..10),
    ) {
        let c = complex(seed, 4, false);
        let f = random_chain_map(&c, seed ^ 4).unwrap();
        let t = c.tensor(&c.dual());
        let w = cotrace_preimage(&c).unwrap();
        let moved = w.sum(&chain(t.rank(), &u).boundary(&t));
        let direct = delta_quantity(&c, &f).unwrap();
        prop_assert_eq!(evaluate_on(&c, &f, &w, DualFactor::PhiDual).unwrap(), direct);
        prop_assert_eq!(evaluate_on(&c, &f, &moved, DualFactor::PhiDual).unwrap(), direct);
    }
}

#[test]
fn identity_map_on_direct_sum() {
    let a = complex(5, 4, false);
    let id = ChainMap::identity(a.clone());
    let sum = id.direct_sum(&id).unwrap();
    assert!(!delta_quantity(sum.source(), &sum).unwrap());
}
