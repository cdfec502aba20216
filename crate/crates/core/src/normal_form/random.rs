//! Seeded generators for test campaigns. Every output is a pure function of
//! its arguments and seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classify::{clear_denominators, decompose, realize, NormalForm, Summand, TwoStep};
use crate::chain_complex::{ChainMap, GradedComplex, PolyMatrix};
use crate::error::Result;
use crate::scalar_ring::{LocalScalar, Polynomial};

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero polynomial of degree at most `max_degree`.
fn random_nonzero_poly(rng: &mut impl Rng, max_degree: u32) -> Polynomial {
    loop {
        let bits: u64 = rng.gen_range(0..(1u64 << (max_degree + 1)));
        if bits != 0 {
            return Polynomial::from_words(vec![bits]);
        }
    }
}

/// Possibly zero polynomial of degree at most `max_degree`.
fn random_poly(rng: &mut impl Rng, max_degree: u32) -> Polynomial {
    Polynomial::from_words(vec![rng.gen_range(0..(1u64 << (max_degree + 1)))])
}

/// A change of basis together with its inverse, both polynomial.
/// Columns of `basis` are the new basis vectors in old coordinates.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub basis: PolyMatrix,
    pub inverse: PolyMatrix,
}

fn to_matrix(dense: &[Vec<Polynomial>]) -> PolyMatrix {
    let n = dense.len();
    let mut m = PolyMatrix::zeros(n, n);
    for (r, row) in dense.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            if !p.is_zero() {
                m.set(r, c, p.clone());
            }
        }
    }
    m
}

fn dense_identity(n: usize) -> Vec<Vec<Polynomial>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Polynomial::one()
                    } else {
                        Polynomial::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Applies `steps` random elementary changes `g_i ← g_i + p(U)·g_j` between
/// generators of equal grading and returns the conjugated complex together
/// with the basis change.
pub fn random_basis_change_tracked(
    c: &GradedComplex,
    seed: u64,
    steps: usize,
) -> (GradedComplex, BasisChange) {
    let n = c.rank();
    let mut rng = rng_for(seed);
    let mut m: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(); n]; n];
    for (t, s, p) in c.differential().entries() {
        m[t][s] = p.clone();
    }
    let mut basis = dense_identity(n);
    let mut inverse = dense_identity(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && c.grading(i) == c.grading(j))
        .collect();
    for _ in 0..steps {
        if pairs.is_empty() {
            break;
        }
        let (i, j) = pairs[rng.gen_range(0..pairs.len())];
        let p = random_nonzero_poly(&mut rng, 2);
        // e_i <- e_i + p e_j: column i += p column j, then row j += p row i.
        for row in m.iter_mut() {
            if !row[j].is_zero() {
                let delta = &p * &row[j];
                row[i] += &delta;
            }
        }
        for row in basis.iter_mut() {
            if !row[j].is_zero() {
                let delta = &p * &row[j];
                row[i] += &delta;
            }
        }
        let (mi, ii) = (m[i].clone(), inverse[i].clone());
        for col in 0..n {
            if !mi[col].is_zero() {
                m[j][col] += &(&p * &mi[col]);
            }
            if !ii[col].is_zero() {
                inverse[j][col] += &(&p * &ii[col]);
            }
        }
    }
    let out = GradedComplex::from_matrix(c.name(), c.generators().to_vec(), to_matrix(&m))
        .expect("conjugating by a homogeneous basis change preserves validity");
    (
        out,
        BasisChange {
            basis: to_matrix(&basis),
            inverse: to_matrix(&inverse),
        },
    )
}

/// A chain-isomorphic copy of `c` in a random homogeneous basis.
pub fn random_basis_change(c: &GradedComplex, seed: u64, steps: usize) -> GradedComplex {
    random_basis_change_tracked(c, seed, steps).0
}

/// A random normal form with at most `max_rank` generators and two-step
/// exponents in `1..=max_exponent`. Gradings are drawn from a narrow band so
/// that many generators share a grading.
pub fn random_normal_form(
    rng: &mut impl Rng,
    max_rank: usize,
    max_exponent: u32,
    allow_one_steps: bool,
) -> NormalForm {
    let max_rank = max_rank.max(if allow_one_steps { 1 } else { 2 });
    loop {
        let pairs = rng.gen_range(0..=max_rank / 2);
        let mut two_steps = Vec::with_capacity(pairs);
        for _ in 0..pairs {
            two_steps.push(TwoStep {
                grading_a: rng.gen_range(0..=2),
                exponent: rng.gen_range(1..=max_exponent.max(1)),
            });
        }
        let mut one_steps = Vec::new();
        if allow_one_steps {
            let room = max_rank - 2 * pairs;
            for _ in 0..rng.gen_range(0..=room.min(3)) {
                one_steps.push(rng.gen_range(-1..=2));
            }
        }
        if !two_steps.is_empty() || !one_steps.is_empty() {
            return NormalForm::new(one_steps, two_steps);
        }
    }
}

/// Parameters of a random complex for campaigns.
#[derive(Clone, Copy, Debug)]
pub struct ComplexSpec {
    pub max_rank: usize,
    pub max_exponent: u32,
    pub max_steps: usize,
    pub allow_one_steps: bool,
}

/// A random complex: `realize` a random normal form, then scramble the basis.
/// Returns the normal form it was built from.
pub fn random_complex(seed: u64, spec: ComplexSpec) -> (NormalForm, GradedComplex) {
    let mut rng = rng_for(seed);
    let nf = random_normal_form(
        &mut rng,
        spec.max_rank,
        spec.max_exponent,
        spec.allow_one_steps,
    );
    let steps = rng.gen_range(0..=spec.max_steps);
    let shuffle_seed = rng.gen();
    let c = random_basis_change(&realize(&nf), shuffle_seed, steps).with_name("random");
    (nf, c)
}

/// Component of a chain map between two summands, written in the adapted
/// basis as `(source index, target index, coefficient)` triples.
fn summand_component(
    rng: &mut impl Rng,
    c: &GradedComplex,
    from: &Summand,
    to: &Summand,
) -> Vec<(usize, usize, Polynomial)> {
    let gr = |i: usize| c.grading(i);
    let mut out = Vec::new();
    match (*from, *to) {
        (
            Summand::TwoStep { a, b, exponent: n },
            Summand::TwoStep {
                a: a2,
                b: b2,
                exponent: m,
            },
        ) => {
            if gr(a) == gr(a2) {
                // F(a) = p a', F(b) = q b' with p U^m = q U^n.
                let base = random_poly(rng, 2);
                let (p, q) = if n >= m {
                    (base.shl_unchecked((n - m) as usize), base)
                } else {
                    (base.clone(), base.shl_unchecked((m - n) as usize))
                };
                out.push((a, a2, p));
                out.push((b, b2, q));
            }
            if gr(a) == gr(b2) {
                // a -> r b', b -> 0
                out.push((a, b2, random_poly(rng, 2)));
            }
        }
        (Summand::OneStep { gen }, Summand::OneStep { gen: g2 }) if gr(gen) == gr(g2) => {
            out.push((gen, g2, random_poly(rng, 2)));
        }
        (Summand::OneStep { gen }, Summand::TwoStep { b, .. }) if gr(gen) == gr(b) => {
            out.push((gen, b, random_poly(rng, 2)));
        }
        (Summand::TwoStep { a, .. }, Summand::OneStep { gen }) if gr(a) == gr(gen) => {
            out.push((a, gen, random_poly(rng, 2)));
        }
        _ => {}
    }
    out
}

/// A random degree-0 chain map `c → c`.
///
/// Built as `S + ∂H + H∂`, where `H` is a random degree +1 map and `S` is
/// assembled summand by summand in the adapted basis of [`decompose`] and
/// conjugated back. When the adapted basis has denominators, the conjugate is
/// multiplied by their lcm, a unit of F2[[U]], to keep entries polynomial.
/// With probability 1/4 the result is the identity.
pub fn random_chain_map(c: &Arc<GradedComplex>, seed: u64) -> Result<ChainMap> {
    let mut rng = rng_for(seed);
    let n = c.rank();
    let mode = rng.gen_range(0..4);
    if mode == 0 {
        return Ok(ChainMap::identity(c.clone()).with_name("random"));
    }
    let dec = decompose(c)?;
    // S in the adapted basis, dense.
    let mut s_adapted = vec![vec![Polynomial::zero(); n]; n];
    if mode == 1 {
        let p = random_nonzero_poly(&mut rng, 3);
        for summand in dec.summands() {
            match *summand {
                Summand::OneStep { gen } => s_adapted[gen][gen] = p.clone(),
                Summand::TwoStep { a, b, .. } => {
                    s_adapted[a][a] = p.clone();
                    s_adapted[b][b] = p.clone();
                }
                Summand::Cancelled { .. } => {}
            }
        }
    } else {
        for from in dec.summands() {
            for to in dec.summands() {
                if rng.gen_bool(0.5) {
                    for (s, t, p) in summand_component(&mut rng, c, from, to) {
                        s_adapted[t][s] += &p;
                    }
                }
            }
        }
    }
    // Conjugate back: F = P S Q.
    let mut local = vec![vec![LocalScalar::zero(); n]; n];
    for (t, row) in s_adapted.iter().enumerate() {
        for (s, p) in row.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let p = LocalScalar::from(p.clone());
            for (g, local_row) in local.iter_mut().enumerate() {
                let left = dec.basis_coefficient(g, t);
                if left.is_zero() {
                    continue;
                }
                let lp = left * &p;
                for (h, entry) in local_row.iter_mut().enumerate() {
                    let right = dec.inverse_coefficient(s, h);
                    if !right.is_zero() {
                        *entry = &*entry + &(&lp * right);
                    }
                }
            }
        }
    }
    let flat: Vec<&LocalScalar> = local.iter().flatten().collect();
    let cleared = clear_denominators(&flat);
    let mut matrix = PolyMatrix::zeros(n, n);
    for (idx, p) in cleared.into_iter().enumerate() {
        if !p.is_zero() {
            matrix.set(idx / n, idx % n, p);
        }
    }
    if mode >= 2 || rng.gen_bool(0.5) {
        // H: degree +1 random map, added as ∂H + H∂.
        let mut h = PolyMatrix::zeros(n, n);
        for s in 0..n {
            for t in 0..n {
                if c.grading(t) == c.grading(s) + 1 && rng.gen_bool(0.3) {
                    h.set(t, s, random_poly(&mut rng, 2));
                }
            }
        }
        let d = c.differential();
        matrix = matrix.add(&d.mul(&h)).add(&h.mul(d));
    }
    ChainMap::new("random", c.clone(), c.clone(), matrix, 0)
}
