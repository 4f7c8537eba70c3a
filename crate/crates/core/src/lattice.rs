//! The deck lattice ℤ^r, its points, and rational characters on it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Scalar;

/// An element of the deck group, written additively as an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![0; rank])
    }

    pub fn new(exponents: Vec<i64>) -> Self {
        LatticePoint(exponents)
    }

    /// The point `t^e` in deck rank one.
    pub fn t(e: i64) -> Self {
        LatticePoint(vec![e])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, m: i64) -> Self {
        LatticePoint(self.0.iter().map(|e| e * m).collect())
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A positive definite inner product on ℝ^r given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InnerProduct {
    rank: usize,
    gram: Vec<Scalar>,
}

impl InnerProduct {
    pub fn identity(rank: usize) -> Self {
        let mut gram = vec![Scalar::zero(); rank * rank];
        for i in 0..rank {
            gram[i * rank + i] = Scalar::one();
        }
        InnerProduct { rank, gram }
    }

    /// Accepts a symmetric Gram matrix in row-major order. Positive
    /// definiteness is checked with leading principal minors.
    pub fn from_gram(rank: usize, gram: Vec<Scalar>) -> Result<Self> {
        if gram.len() != rank * rank {
            return Err(Error::DimensionMismatch { expected: rank * rank, found: gram.len() });
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i * rank + j] != gram[j * rank + i] {
                    return Err(Error::InvalidCoefficient("Gram matrix is not symmetric".into()));
                }
            }
        }
        for m in 1..=rank {
            if leading_minor(&gram, rank, m) <= Scalar::zero() {
                return Err(Error::InvalidCoefficient("Gram matrix is not positive definite".into()));
            }
        }
        Ok(InnerProduct { rank, gram })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Scalar] {
        &self.gram
    }

    pub fn is_identity(&self) -> bool {
        *self == InnerProduct::identity(self.rank)
    }

    pub fn norm_sq(&self, p: &LatticePoint) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rank {
            if p.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if p.0[j] == 0 {
                    continue;
                }
                acc += &self.gram[i * self.rank + j] * Scalar::from_integer(BigInt::from(p.0[i] * p.0[j]));
            }
        }
        acc
    }
}

fn leading_minor(gram: &[Scalar], rank: usize, m: usize) -> Scalar {
    // Fraction Gaussian elimination on the leading m×m block.
    let mut a: Vec<Vec<Scalar>> = (0..m).map(|i| (0..m).map(|j| gram[i * rank + j].clone()).collect()).collect();
    let mut det = Scalar::one();
    for c in 0..m {
        let Some(p) = (c..m).find(|&r| !a[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..m {
            let factor = &a[r][c] / &a[c][c];
            for k in c..m {
                let v = &factor * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// A nonzero rational character ξ on the deck lattice, stored as the
/// primitive integer vector on its ray. Two characters describe the same
/// point of the character sphere exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    coeffs: Vec<i64>,
    metric: InnerProduct,
}

impl Character {
    pub fn new(coeffs: &[Scalar]) -> Result<Self> {
        Self::with_metric(coeffs, InnerProduct::identity(coeffs.len()))
    }

    pub fn with_metric(coeffs: &[Scalar], metric: InnerProduct) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if metric.rank() != coeffs.len() {
            return Err(Error::DimensionMismatch { expected: coeffs.len(), found: metric.rank() });
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCharacter);
        }
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let coeffs = ints
            .iter()
            .map(|c| (c / &g).to_i64().ok_or_else(|| Error::InvalidCoefficient("character entry too large".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { coeffs, metric })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        let v: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::from_integer(c.into())).collect();
        Self::new(&v)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// The primitive integer representative.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn metric(&self) -> &InnerProduct {
        &self.metric
    }

    pub fn negated(&self) -> Character {
        Character { coeffs: self.coeffs.iter().map(|c| -c).collect(), metric: self.metric.clone() }
    }

    /// ξ(g) for the normalized representative.
    pub fn eval(&self, g: &LatticePoint) -> i64 {
        debug_assert_eq!(g.rank(), self.rank());
        self.coeffs.iter().zip(&g.0).map(|(a, b)| a * b).sum()
    }

    pub fn try_eval(&self, g: &LatticePoint) -> Result<i64> {
        if g.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: g.rank() });
        }
        Ok(self.eval(g))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `xi_eval` with an explicit dimension check.
pub fn xi_eval(xi: &Character, g: &LatticePoint) -> Result<i64> {
    xi.try_eval(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn eval_examples() {
        let xi = Character::from_ints(&[1]).unwrap();
        assert_eq!(xi_eval(&xi, &LatticePoint::t(2)).unwrap(), 2);
        assert_eq!(xi_eval(&xi, &LatticePoint::zero(1)).unwrap(), 0);
        let xi2 = Character::from_ints(&[1, 2]).unwrap();
        assert_eq!(xi_eval(&xi2, &LatticePoint::new(vec![1, -1])).unwrap(), -1);
        assert!(xi_eval(&xi2, &LatticePoint::t(1)).is_err());
    }

    #[test]
    fn normalization_keeps_sign_and_is_idempotent() {
        let half = BigRational::new(1.into(), 2.into());
        let a = Character::new(&[half.clone(), half * int(3)]).unwrap();
        assert_eq!(a.coeffs(), &[1, 3]);
        let b = Character::from_ints(&[-4, -12]).unwrap();
        assert_eq!(b.coeffs(), &[-1, -3]);
        assert_ne!(a, b);
        assert_eq!(a, b.negated());
        let again = Character::from_ints(a.coeffs()).unwrap();
        assert_eq!(again, a);
        assert_eq!(Character::from_ints(&[0, 0]), Err(Error::ZeroCharacter));
    }

    #[test]
    fn gram_must_be_positive_definite() {
        assert!(InnerProduct::from_gram(2, vec![int(1), int(2), int(2), int(1)]).is_err());
        let ip = InnerProduct::from_gram(2, vec![int(2), int(1), int(1), int(2)]).unwrap();
        assert_eq!(ip.norm_sq(&LatticePoint::new(vec![1, -1])), int(2));
    }
}
