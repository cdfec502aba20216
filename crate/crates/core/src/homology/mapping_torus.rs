use std::collections::BTreeMap;

use super::window::{ImageModel, Window, WindowComplex};
use crate::chain_complex::{cone, ChainMap, GradedComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::gf2::{rank, BitVec};

fn check_u_free(what: &str, m: &PolyMatrix) -> Result<()> {
    match m.entries().find(|(_, _, p)| !p.is_one()) {
        Some((t, s, p)) => Err(Error::NotUFree(format!(
            "{what} entry ({t}, {s}) is {p}; only 0 and 1 are allowed"
        ))),
        None => Ok(()),
    }
}

/// F2 Betti numbers of `C/UC`, one entry per grading present in `c`.
pub fn f2_betti(c: &GradedComplex) -> BTreeMap<i64, usize> {
    let win = WindowComplex::new(c, Window::new(0, 1));
    win.gradings()
        .into_iter()
        .map(|k| {
            let z = win.cycles(k).len();
            let b = rank(win.dim(), &win.boundaries(k));
            (k, z - b)
        })
        .collect()
}

/// Betti numbers over F2 of the mapping torus of `phi`, computed as the
/// homology of `cone(id + phi)` (over F2, `id − φ = id + φ`).
///
/// `c_y` and `phi` must be defined over F2: every entry is 0 or 1. The
/// result is cross-checked against the rank identity
/// `b_k(cone) = dim coker(F_*)_k + dim ker(F_*)_{k-1}` for `F = id + φ`.
pub fn mapping_torus_betti(c_y: &GradedComplex, phi: &ChainMap) -> Result<BTreeMap<i64, usize>> {
    check_u_free("differential", c_y.differential())?;
    if phi.degree() != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: phi.degree(),
        });
    }
    if **phi.source() != *c_y || **phi.target() != *c_y {
        return Err(Error::ComplexMismatch(
            "the monodromy must be a self-map of the given complex".into(),
        ));
    }
    check_u_free("map", phi.matrix())?;
    let f = ChainMap::identity(phi.source().clone()).add(phi)?;
    let betti = f2_betti(&cone(&f)?);

    let h = ImageModel::new(c_y, Window::new(0, 1), Window::new(0, 1));
    let matrix = h
        .matrix_of(&f)
        .ok_or_else(|| Error::CrossCheck("induced map leaves homology".into()))?;
    let dims = h.dims_by_grading();
    // Rank of F_* restricted to each grading block.
    let mut ranks = BTreeMap::new();
    for &k in dims.keys() {
        let idx: Vec<usize> = (0..h.dim()).filter(|&i| h.rep_gradings[i] == k).collect();
        let cols: Vec<BitVec> = idx
            .iter()
            .map(|&j| {
                let mut v = BitVec::zeros(h.dim());
                for (i, &bit) in matrix[j].iter().enumerate() {
                    if bit {
                        v.set(i, true);
                    }
                }
                v
            })
            .collect();
        ranks.insert(k, rank(h.dim(), &cols));
    }
    let dim_at = |k: i64| dims.get(&k).copied().unwrap_or(0);
    let rank_at = |k: i64| ranks.get(&k).copied().unwrap_or(0);
    for (&k, &b) in &betti {
        let expected = (dim_at(k) - rank_at(k)) + (dim_at(k - 1) - rank_at(k - 1));
        if b != expected {
            return Err(Error::CrossCheck(format!(
                "cone homology in grading {k} is {b}, rank identity gives {expected}"
            )));
        }
    }
    Ok(betti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Generator;
    use std::sync::Arc;

    fn free(gens: &[(&str, i64)]) -> Arc<GradedComplex> {
        GradedComplex::build(
            "y",
            gens.iter().map(|(id, g)| Generator::new(*id, *g)).collect(),
            Vec::<(String, String, crate::scalar_ring::Polynomial)>::new(),
        )
        .unwrap()
        .into_arc()
    }

    #[test]
    fn circle_times_circle() {
        let c = free(&[("e0", 0), ("e1", 1)]);
        let betti = mapping_torus_betti(&c, &ChainMap::identity(c.clone())).unwrap();
        assert_eq!(betti, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn swapped_circles() {
        let c = free(&[("p", 0), ("q", 0), ("e", 1), ("f", 1)]);
        let one = || crate::scalar_ring::Polynomial::one();
        let swap = ChainMap::build(
            "swap",
            c.clone(),
            c.clone(),
            [("p", "q"), ("q", "p"), ("e", "f"), ("f", "e")]
                .iter()
                .map(|(s, t)| (s.to_string(), t.to_string(), one())),
            0,
        )
        .unwrap();
        let betti = mapping_torus_betti(&c, &swap).unwrap();
        assert_eq!(betti, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn rejects_u_dependence() {
        let c = GradedComplex::build(
            "y",
            vec![Generator::new("a", 1), Generator::new("b", 0)],
            [("a".to_string(), "b".to_string(), "U".parse().unwrap())],
        )
        .unwrap()
        .into_arc();
        assert!(matches!(
            mapping_torus_betti(&c, &ChainMap::identity(c.clone())),
            Err(Error::NotUFree(_))
        ));
        let d = free(&[("x", 0)]);
        let u = ChainMap::scalar(d.clone(), &"U".parse().unwrap());
        assert!(matches!(
            mapping_torus_betti(&d, &u),
            Err(Error::NotUFree(_))
        ));
    }
}
