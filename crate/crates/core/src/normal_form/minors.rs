//! Torsion exponents from determinantal ideals, independent of the pivoting
//! reduction in `classify`.

use std::collections::BTreeMap;

use crate::chain_complex::GradedComplex;
use crate::error::{Error, Result};
use crate::scalar_ring::Polynomial;

pub const MINOR_RANK_LIMIT: usize = 12;

/// Fraction-free determinant over F2[U] (Bareiss). Row swaps need no sign
/// correction in characteristic 2.
fn determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut prev = Polynomial::one();
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Polynomial::zero();
        };
        m.swap(k, r);
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) + &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `v[k]` = minimal valuation of a k×k minor of `block`, `None` when all
/// k×k minors vanish.
fn minor_valuations(block: &[Vec<Polynomial>], rows: usize, cols: usize) -> Vec<Option<u32>> {
    let mut v = vec![Some(0)];
    for k in 1..=rows.min(cols) {
        let mut best: Option<u32> = None;
        let row_sets = subsets(rows, k);
        for cs in subsets(cols, k) {
            for rs in &row_sets {
                let sub = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| block[r][c].clone()).collect())
                    .collect();
                if let Some(val) = determinant(sub).valuation().finite() {
                    best = Some(best.map_or(val, |b| b.min(val)));
                }
            }
        }
        if best.is_none() {
            break;
        }
        v.push(best);
    }
    v
}

/// Min-plus convolution of two minor-valuation profiles.
fn combine(a: &[Option<u32>], b: &[Option<u32>]) -> Vec<Option<u32>> {
    let mut out: Vec<Option<u32>> = vec![None; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if let (Some(x), Some(y)) = (x, y) {
                let slot = &mut out[i + j];
                *slot = Some(slot.map_or(x + y, |s| s.min(x + y)));
            }
        }
    }
    out
}

/// Sorted multiset of torsion exponents `e_k = v_k − v_{k−1}` (zeros
/// dropped), where `v_k` is the U-adic valuation of the gcd of the k×k
/// minors of ∂. Computed per grading block, since ∂ is block-diagonal as a
/// map `⊕ C_g → ⊕ C_{g−1}`.
pub fn minor_gcd_check(c: &GradedComplex) -> Result<Vec<u32>> {
    if c.rank() > MINOR_RANK_LIMIT {
        return Err(Error::RankTooLarge {
            rank: c.rank(),
            limit: MINOR_RANK_LIMIT,
        });
    }
    let mut by_grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..c.rank() {
        by_grading.entry(c.grading(i)).or_default().push(i);
    }
    let mut profile = vec![Some(0)];
    for (g, sources) in &by_grading {
        let Some(targets) = by_grading.get(&(g - 1)) else {
            continue;
        };
        let block: Vec<Vec<Polynomial>> = targets
            .iter()
            .map(|&t| sources.iter().map(|&s| c.entry(t, s)).collect())
            .collect();
        profile = combine(
            &profile,
            &minor_valuations(&block, targets.len(), sources.len()),
        );
    }
    let mut exps = Vec::new();
    for k in 1..profile.len() {
        match (profile[k - 1], profile[k]) {
            (Some(a), Some(b)) if b > a => exps.push(b - a),
            _ => {}
        }
    }
    exps.sort_unstable();
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{classify, realize, NormalForm, TwoStep};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![p("U"), p("1+U"), p("0")],
            vec![p("U^2"), p("1"), p("U")],
            vec![p("1"), p("U^3"), p("1+U^2")],
        ];
        // Cofactor expansion along the first row.
        let c1 = &(&p("1") * &p("1+U^2")) + &(&p("U") * &p("U^3"));
        let c2 = &(&p("U^2") * &p("1+U^2")) + &(&p("U") * &p("1"));
        let expected = &(&p("U") * &c1) + &(&p("1+U") * &c2);
        assert_eq!(determinant(m), expected);
    }

    #[test]
    fn spec_examples() {
        let one = realize(&NormalForm::new(
            vec![],
            vec![TwoStep {
                grading_a: 1,
                exponent: 3,
            }],
        ));
        assert_eq!(minor_gcd_check(&one).unwrap(), vec![3]);
        let two = realize(&NormalForm::new(
            vec![],
            vec![
                TwoStep {
                    grading_a: 1,
                    exponent: 1,
                },
                TwoStep {
                    grading_a: 1,
                    exponent: 2,
                },
            ],
        ));
        assert_eq!(minor_gcd_check(&two).unwrap(), vec![1, 2]);
        let free = realize(&NormalForm::new(vec![0, 1], vec![]));
        assert!(minor_gcd_check(&free).unwrap().is_empty());
    }

    #[test]
    fn rank_guard() {
        let nf = NormalForm::new(vec![0; 13], vec![]);
        assert!(matches!(
            minor_gcd_check(&realize(&nf)),
            Err(Error::RankTooLarge {
                rank: 13,
                limit: 12
            })
        ));
    }

    #[test]
    fn agrees_with_classify_on_scrambled_complexes() {
        use crate::normal_form::{random_complex, ComplexSpec};
        for seed in 0..25 {
            let (_, c) = random_complex(
                seed,
                ComplexSpec {
                    max_rank: 10,
                    max_exponent: 4,
                    max_steps: 15,
                    allow_one_steps: true,
                },
            );
            assert_eq!(
                minor_gcd_check(&c).unwrap(),
                classify(&c).unwrap().exponents()
            );
        }
    }
}
