//! Coefficient rings: the integers, the rationals, and prime fields.
//!
//! Scalars are carried as [`BigRational`] in every ring; each ring keeps its
//! scalars in a canonical form (integers have denominator one, prime-field
//! elements are reduced representatives in `0..p`).

use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl CoeffRing {
    pub fn is_field(self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    /// Brings an arbitrary rational into canonical form, failing if it does
    /// not live in this ring.
    pub fn canonical(self, c: Scalar) -> Result<Scalar> {
        match self {
            CoeffRing::Integers => {
                if c.is_integer() {
                    Ok(c)
                } else {
                    Err(Error::InvalidCoefficient(format!("{c} is not an integer")))
                }
            }
            CoeffRing::Rationals => Ok(c),
            CoeffRing::PrimeField(p) => {
                let p = BigInt::from(p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidCoefficient(format!("{c} has denominator divisible by {p}")));
                }
                let inv = mod_inverse(&den, &p).expect("nonzero residue mod a prime");
                let num = (c.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(num))
            }
        }
    }

    /// Reduction after a ring operation on canonical inputs.
    #[inline]
    pub fn reduce(self, c: Scalar) -> Scalar {
        match self {
            CoeffRing::PrimeField(p) => {
                let p = BigInt::from(p);
                BigRational::from_integer(c.to_integer().mod_floor(&p))
            }
            _ => c,
        }
    }

    pub fn is_unit(self, c: &Scalar) -> bool {
        match self {
            CoeffRing::Integers => c.is_integer() && c.numer().abs().is_one(),
            _ => !c.is_zero(),
        }
    }

    pub fn inverse(self, c: &Scalar) -> Option<Scalar> {
        if !self.is_unit(c) {
            return None;
        }
        match self {
            CoeffRing::Integers => Some(c.clone()),
            CoeffRing::Rationals => Some(c.recip()),
            CoeffRing::PrimeField(p) => {
                let p = BigInt::from(p);
                mod_inverse(&c.to_integer(), &p).map(BigRational::from_integer)
            }
        }
    }

    /// Image of a canonical scalar of `self` in `target`, if a ring map exists.
    pub fn map_into(self, target: CoeffRing, c: &Scalar) -> Result<Scalar> {
        match (self, target) {
            (a, b) if a == b => Ok(c.clone()),
            (CoeffRing::Integers, _) => target.canonical(c.clone()),
            (CoeffRing::Rationals, CoeffRing::PrimeField(_)) => target.canonical(c.clone()),
            _ => Err(Error::RingUnsupported(format!("no coefficient map {self} -> {target}"))),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(p).extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> Scalar {
    Scalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_canonical_form() {
        let f5 = CoeffRing::PrimeField(5);
        assert_eq!(f5.canonical(int(-1)).unwrap(), int(4));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f5.canonical(half).unwrap(), int(3));
        assert!(f5.canonical(BigRational::new(1.into(), 5.into())).is_err());
        assert_eq!(f5.inverse(&int(2)).unwrap(), int(3));
    }

    #[test]
    fn integer_units() {
        let z = CoeffRing::Integers;
        assert!(z.is_unit(&int(-1)));
        assert!(!z.is_unit(&int(2)));
        assert!(z.inverse(&int(2)).is_none());
        assert!(z.canonical(BigRational::new(1.into(), 2.into())).is_err());
    }

    #[test]
    fn reduction_mod_two() {
        assert_eq!(CoeffRing::Integers.map_into(CoeffRing::PrimeField(2), &int(-2)).unwrap(), int(0));
        assert!(CoeffRing::Rationals.map_into(CoeffRing::Integers, &int(1)).is_err());
    }
}
