//! Polynomials over F2 in one variable `U`.
//!
//! A polynomial is the set of exponents carrying coefficient 1, stored as a
//! little-endian bit set (bit `k` of the word array is the coefficient of
//! `U^k`). Trailing zero words are always trimmed, so two polynomials are equal
//! exactly when their word vectors are equal, and iteration over exponents is
//! in increasing order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest exponent any polynomial may carry.
pub const MAX_EXPONENT: u64 = 1 << 20;

const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// U-adic valuation: a finite exponent or the sentinel for the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    words: Vec<u64>,
}

fn check_exponent(k: u64) -> Result<()> {
    if k > MAX_EXPONENT {
        Err(Error::ExponentOverflow(k))
    } else {
        Ok(())
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { words: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { words: vec![1] }
    }

    /// `U^k`.
    pub fn monomial(k: u32) -> Result<Self> {
        check_exponent(k as u64)?;
        let mut p = Polynomial::zero();
        p.flip(k as usize);
        Ok(p)
    }

    /// Builds the polynomial whose support is the given exponent set
    /// (repeated exponents are taken once).
    pub fn from_exponents<I: IntoIterator<Item = u32>>(exponents: I) -> Result<Self> {
        let mut p = Polynomial::zero();
        for k in exponents {
            check_exponent(k as u64)?;
            if !p.coefficient(k as usize) {
                p.flip(k as usize);
            }
        }
        Ok(p)
    }

    /// Low-level constructor from packed words; trims trailing zeros.
    pub(crate) fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Polynomial { words }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn coefficient(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coefficient(0)
    }

    fn flip(&mut self, k: usize) {
        let w = k / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (k % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn degree(&self) -> Option<u32> {
        let last = *self.words.last()?;
        Some(((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize) as u32)
    }

    pub fn valuation(&self) -> Valuation {
        for (i, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Valuation::Finite((i * 64) as u32 + w.trailing_zeros());
            }
        }
        Valuation::Infinite
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with coefficient 1, increasing.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros();
                    rest &= rest - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    /// `U^k · self`.
    pub fn shl(&self, k: u32) -> Result<Self> {
        if let Some(d) = self.degree() {
            check_exponent(d as u64 + k as u64)?;
        }
        Ok(self.shl_unchecked(k as usize))
    }

    pub(crate) fn shl_unchecked(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut out = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            out[i + ws] ^= w << bs;
            if bs != 0 {
                out[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Polynomial::from_words(out)
    }

    /// `self / U^k`, valid when `k <= valuation(self)`.
    pub(crate) fn shr(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return Polynomial::zero();
        }
        let src = &self.words[ws..];
        let mut out = vec![0u64; src.len()];
        for i in 0..src.len() {
            out[i] = src[i] >> bs;
            if bs != 0 && i + 1 < src.len() {
                out[i] |= src[i + 1] << (64 - bs);
            }
        }
        Polynomial::from_words(out)
    }

    /// Reduction modulo `U^prec`.
    pub fn truncate(&self, prec: usize) -> Self {
        let mut words: Vec<u64> = self.words.iter().take(prec.div_ceil(64)).copied().collect();
        if !prec.is_multiple_of(64) {
            if let Some(last) = words.get_mut(prec / 64) {
                *last &= (1u64 << (prec % 64)) - 1;
            }
        }
        Polynomial::from_words(words)
    }

    pub fn checked_mul(&self, rhs: &Polynomial) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.degree(), rhs.degree()) {
            check_exponent(a as u64 + b as u64)?;
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Polynomial) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = vec![0u64; small.words.len() + large.words.len() + 1];
        for k in small.exponents() {
            let (ws, bs) = (k as usize / 64, k as usize % 64);
            for (i, &w) in large.words.iter().enumerate() {
                out[i + ws] ^= w << bs;
                if bs != 0 {
                    out[i + ws + 1] ^= w >> (64 - bs);
                }
            }
        }
        Polynomial::from_words(out)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial") as usize;
        let mut r = self.words.clone();
        let Some(top) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        let top = top as usize;
        if top < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut q = vec![0u64; (top - dd) / 64 + 1];
        let mut k = top;
        loop {
            if (r[k / 64] >> (k % 64)) & 1 == 1 {
                let shift = k - dd;
                q[shift / 64] |= 1 << (shift % 64);
                let (ws, bs) = (shift / 64, shift % 64);
                for (i, &w) in divisor.words.iter().enumerate() {
                    r[i + ws] ^= w << bs;
                    if bs != 0 && i + ws + 1 < r.len() {
                        r[i + ws + 1] ^= w >> (64 - bs);
                    }
                }
            }
            if k == dd {
                break;
            }
            k -= 1;
        }
        (Polynomial::from_words(q), Polynomial::from_words(r))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds when the division is not exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// The formal derivative `d/dU`: `U^k ↦ k·U^(k-1)`, which over F2 keeps
    /// exactly the odd exponents.
    pub fn formal_derivative(&self) -> Polynomial {
        let odd: Vec<u64> = self.words.iter().map(|w| w & ODD_BITS).collect();
        Polynomial::from_words(odd).shr(1)
    }

    /// Power-series quotient `self / den` modulo `U^prec`; `den` must have
    /// constant term 1.
    pub fn series_div(&self, den: &Polynomial, prec: usize) -> Polynomial {
        assert!(den.constant_term(), "series division by a non-unit");
        if den.is_one() {
            return self.truncate(prec);
        }
        let mut r = self.truncate(prec).words;
        r.resize(prec.div_ceil(64).max(1), 0);
        let mut q = vec![0u64; r.len()];
        for k in 0..prec {
            if (r[k / 64] >> (k % 64)) & 1 == 1 {
                q[k / 64] |= 1 << (k % 64);
                let (ws, bs) = (k / 64, k % 64);
                for (i, &w) in den.words.iter().enumerate() {
                    if i + ws < r.len() {
                        r[i + ws] ^= w << bs;
                    }
                    if bs != 0 && i + ws + 1 < r.len() {
                        r[i + ws + 1] ^= w >> (64 - bs);
                    }
                }
            }
        }
        Polynomial::from_words(q).truncate(prec)
    }
}

/// Monic gcd over F2[U] via the Euclidean algorithm.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd_nonzero(p, q))
}

pub(crate) fn gcd_nonzero(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let (mut a, mut b) = (p.clone(), q.clone());
    // Pull out the common power of U first; it keeps the remainders short.
    let va = a.valuation().finite();
    let vb = b.valuation().finite();
    let common = match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => 0,
    } as usize;
    if common > 0 {
        a = a.shr(common);
        b = b.shr(common);
    }
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.shl_unchecked(common)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Polynomial::from_words(words)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= s;
        }
        self.trim();
    }
}

/// Panics if the product would exceed [`MAX_EXPONENT`]; use
/// [`Polynomial::checked_mul`] on untrusted input.
impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomial product exceeds the exponent bound")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in self.exponents() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("U")?,
                _ => write!(f, "U^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses `1`, `U`, `U^k` joined by `+`; `0` is zero. Repeated monomials
    /// cancel in pairs.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |token: &str, message: &str| Error::Parse {
            line: 0,
            token: token.to_string(),
            message: message.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad(s, "empty polynomial"));
        }
        if trimmed == "0" {
            return Ok(Polynomial::zero());
        }
        let mut p = Polynomial::zero();
        for raw in trimmed.split('+') {
            let term = raw.trim();
            let k: u64 = match term {
                "1" => 0,
                "U" => 1,
                _ => {
                    let Some(exp) = term.strip_prefix("U^") else {
                        return Err(bad(term, "expected `1`, `U` or `U^k`"));
                    };
                    if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad(term, "exponent must be a decimal integer"));
                    }
                    exp.parse().map_err(|_| Error::ExponentOverflow(u64::MAX))?
                }
            };
            check_exponent(k)?;
            p.flip(k as usize);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn addition_cancels_in_characteristic_two() {
        assert_eq!(&poly("U^2+U^3") + &poly("U^3+U^5"), poly("U^2+U^5"));
        let p = poly("1+U^7+U^70");
        assert!((&p + &p).is_zero());
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn multiplication() {
        assert_eq!(&poly("1+U") * &poly("1+U"), poly("1+U^2"));
        assert_eq!(&poly("U^2") * &poly("U^3"), poly("U^5"));
        assert!((&poly("1+U") * &Polynomial::zero()).is_zero());
        // crosses a word boundary
        assert_eq!(&poly("U^40+1") * &poly("U^40"), poly("U^40+U^80"));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(poly("U^2+U^5").valuation(), Valuation::Finite(2));
        assert_eq!(poly("1+U").valuation(), Valuation::Finite(0));
        assert_eq!(Polynomial::zero().valuation(), Valuation::Infinite);
        assert_eq!(poly("U^130").valuation(), Valuation::Finite(130));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly("U^3").formal_derivative(), poly("U^2"));
        assert!(poly("U^2").formal_derivative().is_zero());
        assert_eq!(poly("1+U+U^4").formal_derivative(), Polynomial::one());
        assert_eq!(poly("U^65").formal_derivative(), poly("U^64"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            poly_gcd(&poly("U^2+U^3"), &poly("U^2")).unwrap(),
            poly("U^2")
        );
        assert_eq!(
            poly_gcd(&poly("1+U"), &poly("U")).unwrap(),
            Polynomial::one()
        );
        let p = poly("U+U^4");
        assert_eq!(poly_gcd(&p, &Polynomial::zero()).unwrap(), p);
        assert_eq!(
            poly_gcd(&Polynomial::zero(), &Polynomial::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn division_round_trips() {
        let a = poly("1+U^3+U^9+U^70");
        let b = poly("1+U+U^5");
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn series_division_inverts_units() {
        let den = poly("1+U+U^3");
        let inv = Polynomial::one().series_div(&den, 100);
        assert_eq!((&inv * &den).truncate(100), Polynomial::one());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(poly("U^2 + U^5").to_string(), "U^2+U^5");
        assert_eq!(poly("0").to_string(), "0");
        assert_eq!(poly("U+1").to_string(), "1+U");
        assert!(poly("U+U").is_zero());
        assert!("U^".parse::<Polynomial>().is_err());
        assert!("x".parse::<Polynomial>().is_err());
        assert!(matches!(
            "U^2000000".parse::<Polynomial>(),
            Err(Error::ExponentOverflow(_))
        ));
    }

    #[test]
    fn exponent_guard() {
        let big = Polynomial::monomial(1 << 19).unwrap();
        assert!(big.checked_mul(&big).is_ok());
        let bigger = Polynomial::monomial((1 << 19) + 1).unwrap();
        assert!(matches!(
            big.checked_mul(&bigger),
            Err(Error::ExponentOverflow(_))
        ));
        assert!(Polynomial::monomial((1 << 20) + 1).is_err());
    }
}
