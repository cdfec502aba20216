use serde::Serialize;

use super::flavors::{h_plus_of, h_red_of, Side};
use super::LaurentChain;
use crate::chain_complex::GradedComplex;
use crate::error::{Error, Result};
use crate::gf2::{is_invertible, BitVec};
use crate::normal_form::decompose;

/// `⟨x, y⟩` for `x` a chain of `C` and `y` a chain of `C^∨`: the number mod 2
/// of term pairs `U^i g`, `U^j g*` with `i + j = -1`.
///
/// Generator `g*` of the dual has the same index as `g`.
pub fn f2_pairing(x: &LaurentChain, y: &LaurentChain) -> bool {
    x.terms().filter(|&(g, i)| y.contains(g, -1 - i)).count() % 2 == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub plus_dimension: usize,
    pub dual_minus_dimension: usize,
    pub invertible: bool,
}

/// Pairs the `H^+(C)` basis against the reduced `H^-(C^∨)` basis and tests
/// the resulting square matrix for invertibility over F2. Requires
/// `H^∞(C) = 0`.
pub fn perfect_pairing_check(c: &GradedComplex) -> Result<PairingReport> {
    let dec = decompose(&std::sync::Arc::new(c.clone()))?;
    let free = dec.normal_form().one_steps().len();
    if free > 0 {
        return Err(Error::InfinityNotZero(free));
    }
    let plus = h_plus_of(&dec).basis;
    let dual = decompose(&std::sync::Arc::new(c.dual()))?;
    let minus = h_red_of(&dual, Side::Minus).basis;
    let rows: Vec<BitVec> = plus
        .iter()
        .map(|x| {
            let mut row = BitVec::zeros(minus.len());
            for (j, y) in minus.iter().enumerate() {
                row.set(j, f2_pairing(x, y));
            }
            row
        })
        .collect();
    Ok(PairingReport {
        plus_dimension: plus.len(),
        dual_minus_dimension: minus.len(),
        invertible: plus.len() == minus.len() && is_invertible(&rows),
    })
}
