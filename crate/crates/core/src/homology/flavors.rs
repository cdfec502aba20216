use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::window::{Window, WindowComplex};
use super::{ChainTerm, LaurentChain};
use crate::chain_complex::GradedComplex;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Reducer};
use crate::normal_form::{decompose, Decomposition, Summand};
use crate::scalar_ring::{LocalScalar, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Minus,
    Infinity,
    Plus,
    RedMinus,
    RedPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum F2Dimension {
    Finite(usize),
    Infinite,
}

impl F2Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            F2Dimension::Finite(n) => Some(n),
            F2Dimension::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, F2Dimension::Finite(_))
    }
}

impl Serialize for F2Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            F2Dimension::Finite(n) => s.serialize_u64(*n as u64),
            F2Dimension::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A cyclic summand `F2[U]/U^exponent` (minus side) or its plus-side
/// counterpart, in the given grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorsionSummand {
    pub grading: i64,
    pub exponent: u32,
}

/// One homology flavor of a complex.
///
/// Minus-side torsion sits in the grading of the `b` generator of each
/// two-step; plus-side torsion in the grading of `a`. `basis` is an F2 basis
/// of representatives when `f2_dimension` is finite and empty otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub flavor: Flavor,
    pub free_ranks: BTreeMap<i64, usize>,
    pub torsion: Vec<TorsionSummand>,
    pub f2_dimension: F2Dimension,
    pub basis: Vec<LaurentChain>,
    pub basis_gradings: Vec<i64>,
}

/// JSON form of a [`HomologyPresentation`]; field order is key order.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub flavor: Flavor,
    pub free_ranks: BTreeMap<i64, usize>,
    pub torsion: Vec<TorsionSummand>,
    pub f2_dimension: F2Dimension,
    pub basis: Vec<Vec<ChainTerm>>,
}

impl HomologyPresentation {
    pub fn report(&self, c: &GradedComplex) -> HomologyReport {
        HomologyReport {
            flavor: self.flavor,
            free_ranks: self.free_ranks.clone(),
            torsion: self.torsion.clone(),
            f2_dimension: self.f2_dimension,
            basis: self.basis.iter().map(|x| x.to_terms(c)).collect(),
        }
    }

    pub fn total_free_rank(&self) -> usize {
        self.free_ranks.values().sum()
    }
}

fn one_step_ranks(dec: &Decomposition) -> BTreeMap<i64, usize> {
    let mut ranks = BTreeMap::new();
    for s in dec.summands() {
        if let Summand::OneStep { gen } = *s {
            *ranks.entry(dec.complex().grading(gen)).or_insert(0) += 1;
        }
    }
    ranks
}

fn two_steps(dec: &Decomposition) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
    dec.summands().iter().filter_map(|s| match *s {
        Summand::TwoStep { a, b, exponent } => Some((a, b, exponent)),
        _ => None,
    })
}

fn torsion_total(dec: &Decomposition) -> usize {
    two_steps(dec).map(|(_, _, n)| n as usize).sum()
}

/// Torsion basis of H^-: `U^j · D·b` for `j < n`, where `D·b` is the adapted
/// basis vector with denominators cleared.
fn minus_torsion(dec: &Decomposition) -> (Vec<TorsionSummand>, Vec<LaurentChain>, Vec<i64>) {
    let c = dec.complex();
    let mut torsion = Vec::new();
    let mut basis = Vec::new();
    let mut gradings = Vec::new();
    for (_, b, n) in two_steps(dec) {
        torsion.push(TorsionSummand {
            grading: c.grading(b),
            exponent: n,
        });
        let v = LaurentChain::from_polynomials(&dec.polynomial_basis_vector(b), 0);
        for j in 0..n {
            basis.push(v.shifted(j as i64));
            gradings.push(c.grading(b));
        }
    }
    torsion.sort();
    (torsion, basis, gradings)
}

/// Basis of the two-step part of H^+: the negative part of `U^-i · a` for
/// `1 <= i <= n`, with `a` expanded as a power series.
fn plus_torsion(dec: &Decomposition) -> (Vec<TorsionSummand>, Vec<LaurentChain>, Vec<i64>) {
    let c = dec.complex();
    let mut torsion = Vec::new();
    let mut basis = Vec::new();
    let mut gradings = Vec::new();
    for (a, _, n) in two_steps(dec) {
        torsion.push(TorsionSummand {
            grading: c.grading(a),
            exponent: n,
        });
        let series = dec.truncated_basis_vector(a, n as usize);
        for i in 1..=n as i64 {
            basis.push(LaurentChain::from_polynomials(&series, -i).negative_part());
            gradings.push(c.grading(a));
        }
    }
    torsion.sort();
    (torsion, basis, gradings)
}

pub(crate) fn h_minus_of(dec: &Decomposition) -> HomologyPresentation {
    let free_ranks = one_step_ranks(dec);
    let (torsion, basis, basis_gradings) = minus_torsion(dec);
    let finite = free_ranks.is_empty();
    HomologyPresentation {
        flavor: Flavor::Minus,
        f2_dimension: if finite {
            F2Dimension::Finite(torsion_total(dec))
        } else {
            F2Dimension::Infinite
        },
        basis: if finite { basis } else { Vec::new() },
        basis_gradings: if finite { basis_gradings } else { Vec::new() },
        free_ranks,
        torsion,
    }
}

pub(crate) fn h_infinity_of(dec: &Decomposition) -> HomologyPresentation {
    let free_ranks = one_step_ranks(dec);
    HomologyPresentation {
        flavor: Flavor::Infinity,
        f2_dimension: if free_ranks.is_empty() {
            F2Dimension::Finite(0)
        } else {
            F2Dimension::Infinite
        },
        free_ranks,
        torsion: Vec::new(),
        basis: Vec::new(),
        basis_gradings: Vec::new(),
    }
}

pub(crate) fn h_plus_of(dec: &Decomposition) -> HomologyPresentation {
    let free_ranks = one_step_ranks(dec);
    if !free_ranks.is_empty() {
        return HomologyPresentation {
            flavor: Flavor::Plus,
            free_ranks,
            torsion: Vec::new(),
            f2_dimension: F2Dimension::Infinite,
            basis: Vec::new(),
            basis_gradings: Vec::new(),
        };
    }
    let (torsion, basis, basis_gradings) = plus_torsion(dec);
    HomologyPresentation {
        flavor: Flavor::Plus,
        free_ranks,
        torsion,
        f2_dimension: F2Dimension::Finite(torsion_total(dec)),
        basis,
        basis_gradings,
    }
}

pub(crate) fn h_red_of(dec: &Decomposition, side: Side) -> HomologyPresentation {
    let (flavor, (torsion, basis, basis_gradings)) = match side {
        Side::Minus => (Flavor::RedMinus, minus_torsion(dec)),
        Side::Plus => (Flavor::RedPlus, plus_torsion(dec)),
    };
    HomologyPresentation {
        flavor,
        free_ranks: BTreeMap::new(),
        torsion,
        f2_dimension: F2Dimension::Finite(torsion_total(dec)),
        basis,
        basis_gradings,
    }
}

fn decomposition(c: &GradedComplex) -> Result<Decomposition> {
    decompose(&Arc::new(c.clone()))
}

/// `H^-(C)`, the homology of `C ⊗ F2[[U]]`.
pub fn h_minus(c: &GradedComplex) -> Result<HomologyPresentation> {
    Ok(h_minus_of(&decomposition(c)?))
}

/// `H^∞(C)`: free of rank equal to the number of one-step summands.
pub fn h_infinity(c: &GradedComplex) -> Result<HomologyPresentation> {
    Ok(h_infinity_of(&decomposition(c)?))
}

/// `H^+(C)`; infinite-dimensional exactly when a one-step summand exists.
pub fn h_plus(c: &GradedComplex) -> Result<HomologyPresentation> {
    Ok(h_plus_of(&decomposition(c)?))
}

/// The reduced part of `H^-` (kernel to `H^∞`) or of `H^+` (cokernel from
/// `H^∞`).
pub fn h_red(c: &GradedComplex, side: Side) -> Result<HomologyPresentation> {
    Ok(h_red_of(&decomposition(c)?, side))
}

pub fn homology(c: &GradedComplex, flavor: Flavor) -> Result<HomologyPresentation> {
    let dec = decomposition(c)?;
    Ok(match flavor {
        Flavor::Minus => h_minus_of(&dec),
        Flavor::Infinity => h_infinity_of(&dec),
        Flavor::Plus => h_plus_of(&dec),
        Flavor::RedMinus => h_red_of(&dec, Side::Minus),
        Flavor::RedPlus => h_red_of(&dec, Side::Plus),
    })
}

/// Connecting map `H^+ → H^-` by zig-zag: lift the negative part to `C^∞`
/// and apply `∂`. The result has only nonnegative exponents.
pub fn delta(c: &GradedComplex, class: &LaurentChain) -> Result<LaurentChain> {
    let d = class.negative_part().boundary(c);
    if !d.negative_part().is_zero() {
        return Err(Error::NotACycleInPlus);
    }
    Ok(d)
}

fn check_minus_cycle(c: &GradedComplex, x: &LaurentChain) -> Result<()> {
    if !x.negative_part().is_zero() || !x.boundary(c).is_zero() {
        return Err(Error::NotACycle);
    }
    Ok(())
}

pub(crate) fn delta_inverse_of(dec: &Decomposition, class: &LaurentChain) -> Result<LaurentChain> {
    let c = dec.complex();
    let free: usize = one_step_ranks(dec).values().sum();
    if free > 0 {
        return Err(Error::InfinityNotZero(free));
    }
    check_minus_cycle(c, class)?;
    let plus = plus_torsion(dec).1;
    // Cycles in C^- supported in exponents >= max exponent are boundaries,
    // so membership can be decided modulo U^N.
    let n = 2 * dec.normal_form().max_exponent() as i64 + 2;
    let win = WindowComplex::new(c, Window::new(0, n));
    let mut red = Reducer::new(win.dim(), plus.len());
    for g in 0..c.rank() {
        for e in 0..n {
            red.insert(win.boundary(&LaurentChain::term(g, e)));
        }
    }
    for (j, h) in plus.iter().enumerate() {
        let image = win.vector(&delta(c, h)?);
        if red
            .insert_tagged(image, BitVec::unit(plus.len(), j))
            .is_some()
        {
            return Err(Error::CrossCheck(
                "connecting map is not injective on the H^+ basis".into(),
            ));
        }
    }
    let mut v = win.vector(class);
    let mut tag = BitVec::zeros(plus.len());
    red.reduce_tagged(&mut v, &mut tag);
    if !v.is_zero() {
        return Err(Error::NotInImage);
    }
    let mut out = LaurentChain::zero();
    for j in tag.ones() {
        out.add_assign(&plus[j]);
    }
    Ok(out)
}

/// A preimage under the connecting map, as a combination of the `H^+`
/// basis. Requires `H^∞ = 0`.
pub fn delta_inverse(c: &GradedComplex, class: &LaurentChain) -> Result<LaurentChain> {
    delta_inverse_of(&decomposition(c)?, class)
}

/// Coordinates of a class of `H^-` in the adapted basis: the exact
/// coefficient on each one-step summand and the residue mod `U^n` on the `b`
/// generator of each two-step. Two cycles are homologous over F2[[U]]
/// exactly when these agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusClass {
    pub free: Vec<LocalScalar>,
    pub torsion: Vec<Polynomial>,
}

pub(crate) fn minus_class_of(dec: &Decomposition, x: &LaurentChain) -> Result<MinusClass> {
    let c = dec.complex();
    check_minus_cycle(c, x)?;
    let coords: Vec<Polynomial> = (0..c.rank())
        .map(|g| {
            let mut p = Polynomial::zero();
            for e in x.coefficient(g).exponents() {
                p += &Polynomial::monomial(e as u32).expect("cycle exponents are bounded");
            }
            p
        })
        .collect();
    let coordinate = |k: usize| -> LocalScalar {
        let mut acc = LocalScalar::zero();
        for (g, p) in coords.iter().enumerate() {
            if !p.is_zero() {
                acc = &acc + &(dec.inverse_coefficient(k, g) * &LocalScalar::from(p.clone()));
            }
        }
        acc
    };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for s in dec.summands() {
        match *s {
            Summand::OneStep { gen } => free.push(coordinate(gen)),
            Summand::TwoStep { b, exponent, .. } => {
                torsion.push(coordinate(b).series(exponent as usize))
            }
            Summand::Cancelled { .. } => {}
        }
    }
    Ok(MinusClass { free, torsion })
}

pub fn minus_class(c: &GradedComplex, x: &LaurentChain) -> Result<MinusClass> {
    minus_class_of(&decomposition(c)?, x)
}

/// Whether two cycles of `C^-` are homologous over F2[[U]].
pub fn homologous_minus(c: &GradedComplex, x: &LaurentChain, y: &LaurentChain) -> Result<bool> {
    let dec = decomposition(c)?;
    Ok(minus_class_of(&dec, x)? == minus_class_of(&dec, y)?)
}

/// Whether two cycles of `C^+` (negative parts are used) are homologous.
///
/// Decided in the window `[-(L + E), 0)`, where `-L` is the lowest exponent
/// present and `E` the largest two-step exponent; any bounding chain can be
/// taken inside that window.
pub fn homologous_plus(c: &GradedComplex, x: &LaurentChain, y: &LaurentChain) -> Result<bool> {
    let w = x.sum(y).negative_part();
    if !w.boundary(c).negative_part().is_zero() {
        return Err(Error::NotACycleInPlus);
    }
    let Some(low) = w.min_exponent() else {
        return Ok(true);
    };
    let e = decomposition(c)?.normal_form().max_exponent() as i64;
    let win = WindowComplex::new(c, Window::new(low - e, 0));
    let mut red = Reducer::new(win.dim(), 0);
    for g in 0..c.rank() {
        for k in low - e..0 {
            red.insert(win.boundary(&LaurentChain::term(g, k)));
        }
    }
    Ok(red.contains(&win.vector(&w)))
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn two_step_flavors() {
        let c = two_step(3);
        let m = h_minus(&c).unwrap();
        assert_eq!(
            m.torsion,
            vec![TorsionSummand {
                grading: 0,
                exponent: 3
            }]
        );
        assert_eq!(m.f2_dimension, F2Dimension::Finite(3));
        assert!(m.free_ranks.is_empty());
        assert_eq!(h_infinity(&c).unwrap().f2_dimension, F2Dimension::Finite(0));
        let c2 = two_step(2);
        let p = h_plus(&c2).unwrap();
        assert_eq!(p.f2_dimension, F2Dimension::Finite(2));
        assert_eq!(
            p.basis,
            vec![LaurentChain::term(0, -1), LaurentChain::term(0, -2)]
        );
        assert_eq!(p.basis_gradings, vec![1, 1]);
        for side in [Side::Minus, Side::Plus] {
            assert_eq!(
                h_red(&c, side).unwrap().f2_dimension,
                F2Dimension::Finite(3)
            );
        }
    }

    #[test]
    fn one_step_flavors() {
        let c = realize(&NormalForm::new(vec![2], vec![]));
        let m = h_minus(&c).unwrap();
        assert_eq!(m.free_ranks, BTreeMap::from([(2, 1)]));
        assert_eq!(h_plus(&c).unwrap().f2_dimension, F2Dimension::Infinite);
        assert_eq!(h_infinity(&c).unwrap().total_free_rank(), 1);
        assert_eq!(
            h_red(&c, Side::Plus).unwrap().f2_dimension,
            F2Dimension::Finite(0)
        );
        assert_eq!(
            delta_inverse(&c, &LaurentChain::zero()),
            Err(Error::InfinityNotZero(1))
        );
    }

    #[test]
    fn report_json() {
        let c = two_step(1);
        let json = serde_json::to_string(&h_plus(&c).unwrap().report(&c)).unwrap();
        assert_eq!(
            json,
            r#"{"flavor":"plus","free_ranks":{},"torsion":[{"grading":1,"exponent":1}],"f2_dimension":1,"basis":[[{"gen":"a0","exp":-1}]]}"#
        );
        let c = realize(&NormalForm::new(vec![0], vec![]));
        let json = serde_json::to_string(&h_plus(&c).unwrap().report(&c)).unwrap();
        assert!(json.contains(r#""f2_dimension":"infinite""#));
    }

    #[test]
    fn delta_on_two_step() {
        let c = two_step(3);
        let x = LaurentChain::term(0, -1);
        assert_eq!(delta(&c, &x).unwrap(), LaurentChain::term(1, 2));
        assert_eq!(
            delta(&c, &LaurentChain::term(0, 4)).unwrap(),
            LaurentChain::zero()
        );
        assert_eq!(
            delta(&c, &LaurentChain::term(0, -4)),
            Err(Error::NotACycleInPlus)
        );
        let back = delta_inverse(&c, &LaurentChain::term(1, 2)).unwrap();
        assert_eq!(back, x);
        assert_eq!(
            delta_inverse(&c, &LaurentChain::term(0, 0)),
            Err(Error::NotACycle)
        );
    }

    #[test]
    fn homologous_checks() {
        let c = two_step(2);
        // U^2 b is a boundary in C^-, U b is not.
        assert!(homologous_minus(&c, &LaurentChain::term(1, 2), &LaurentChain::zero()).unwrap());
        assert!(!homologous_minus(&c, &LaurentChain::term(1, 1), &LaurentChain::zero()).unwrap());
        // U^-1 b is a boundary in C^+; U^-1 a is not.
        assert!(homologous_plus(&c, &LaurentChain::term(1, -1), &LaurentChain::zero()).unwrap());
        assert!(!homologous_plus(&c, &LaurentChain::term(0, -1), &LaurentChain::zero()).unwrap());
    }

    #[test]
    fn delta_round_trip_on_random_complexes() {
        for seed in 0..20 {
            let (_, c) = random_complex(
                seed,
                ComplexSpec {
                    max_rank: 8,
                    max_exponent: 4,
                    max_steps: 20,
                    allow_one_steps: false,
                },
            );
            let p = h_plus(&c).unwrap();
            for h in &p.basis {
                let d = delta(&c, h).unwrap();
                let back = delta_inverse(&c, &d).unwrap();
                assert!(homologous_plus(&c, &back, h).unwrap(), "seed {seed}");
            }
        }
    }
}
