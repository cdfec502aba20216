//! The localization F2[U]_(U): fractions whose denominator has constant term 1.
//!
//! This ring embeds in F2[[U]] and is a discrete valuation ring with uniformizer
//! `U`; every element is `U^v · unit`. Values are kept reduced, so component
//! equality is ring equality.

use std::fmt;
use std::ops::{Add, Mul};

use super::polynomial::{gcd_nonzero, Polynomial, Valuation};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalScalar {
    num: Polynomial,
    den: Polynomial,
}

impl LocalScalar {
    pub fn zero() -> Self {
        LocalScalar {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        LocalScalar {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    /// Builds `num / den` in reduced form; `den` must have constant term 1.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if !den.constant_term() {
            return Err(Error::NotAUnit(den.to_string()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return LocalScalar::zero();
        }
        if den.is_one() {
            return LocalScalar { num, den };
        }
        let g = gcd_nonzero(&num, &den);
        if g.is_one() {
            LocalScalar { num, den }
        } else {
            LocalScalar {
                num: num.div_exact(&g),
                den: den.div_exact(&g),
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.num.constant_term()
    }

    /// Valuation of the numerator; the denominator is a unit.
    pub fn valuation(&self) -> Valuation {
        self.num.valuation()
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(LocalScalar {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// `self / rhs` where `rhs` divides `self` in the local ring, i.e.
    /// `valuation(rhs) <= valuation(self)`.
    pub fn div(&self, rhs: &LocalScalar) -> Result<Self> {
        if self.is_zero() {
            return Ok(LocalScalar::zero());
        }
        let (Valuation::Finite(a), Valuation::Finite(b)) = (self.valuation(), rhs.valuation())
        else {
            return Err(Error::NotAUnit(rhs.to_string()));
        };
        if b > a {
            return Err(Error::NotAUnit(rhs.to_string()));
        }
        let num = &self.num.shr(b as usize) * &rhs.den;
        let den = &self.den * &rhs.num.shr(b as usize);
        Ok(Self::reduced(num, den))
    }

    /// Splits a nonzero element as `U^v · unit`.
    pub fn split_unit(&self) -> Option<(u32, LocalScalar)> {
        let v = self.valuation().finite()?;
        Some((
            v,
            LocalScalar {
                num: self.num.shr(v as usize),
                den: self.den.clone(),
            },
        ))
    }

    /// First `prec` coefficients of the power series expansion.
    pub fn series(&self, prec: usize) -> Polynomial {
        self.num.series_div(&self.den, prec)
    }
}

/// Convenience: `local_inverse` as a free function.
pub fn local_inverse(s: &LocalScalar) -> Result<LocalScalar> {
    s.inverse()
}

impl From<Polynomial> for LocalScalar {
    fn from(p: Polynomial) -> Self {
        LocalScalar {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl Add for &LocalScalar {
    type Output = LocalScalar;

    fn add(self, rhs: &LocalScalar) -> LocalScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return LocalScalar::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        LocalScalar::reduced(num, &self.den * &rhs.den)
    }
}

impl Mul for &LocalScalar {
    type Output = LocalScalar;

    fn mul(self, rhs: &LocalScalar) -> LocalScalar {
        if self.is_zero() || rhs.is_zero() {
            return LocalScalar::zero();
        }
        // Cross-cancel before multiplying so intermediate degrees stay small.
        let g1 = if self.den.is_one() || rhs.num.is_one() {
            Polynomial::one()
        } else {
            gcd_nonzero(&rhs.num, &self.den)
        };
        let g2 = if rhs.den.is_one() || self.num.is_one() {
            Polynomial::one()
        } else {
            gcd_nonzero(&self.num, &rhs.den)
        };
        let num = &self.num.div_exact(&g2) * &rhs.num.div_exact(&g1);
        let den = &self.den.div_exact(&g1) * &rhs.den.div_exact(&g2);
        LocalScalar { num, den }
    }
}

impl fmt::Display for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn frac(n: &str, d: &str) -> LocalScalar {
        LocalScalar::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(local_inverse(&frac("1+U", "1")).unwrap(), frac("1", "1+U"));
        assert_eq!(
            local_inverse(&LocalScalar::one()).unwrap(),
            LocalScalar::one()
        );
        assert!(matches!(
            local_inverse(&frac("U", "1")),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            local_inverse(&LocalScalar::zero()),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn reduced_representation_is_canonical() {
        // (1+U^2)/(1+U) = 1+U
        assert_eq!(frac("1+U^2", "1+U"), frac("1+U", "1"));
        assert_eq!(frac("0", "1+U^3"), LocalScalar::zero());
        assert!(LocalScalar::new(poly("1"), poly("U")).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = frac("U", "1+U");
        let b = frac("1", "1+U");
        assert_eq!(&a + &b, LocalScalar::one());
        let x = frac("U^2+U^3", "1+U+U^2");
        let y = frac("1+U^4", "1+U^3");
        assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x);
        assert_eq!((&x * &y).valuation(), Valuation::Finite(2));
        assert_eq!(
            x.div(&frac("U", "1")).unwrap().valuation(),
            Valuation::Finite(1)
        );
        assert!(frac("U", "1").div(&frac("U^2", "1")).is_err());
    }

    #[test]
    fn series_expansion() {
        // 1/(1+U) = 1 + U + U^2 + ...
        assert_eq!(frac("1", "1+U").series(5), poly("1+U+U^2+U^3+U^4"));
        assert_eq!(frac("U^3", "1+U").series(3), Polynomial::zero());
    }
}
