//! Windowed elements of the Novikov completion in which supports are bounded
//! below in ξ-value.

use core::fmt;

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::{Character, LatticePoint};
use crate::ring::Scalar;

/// A series known exactly on the ξ-band `[valuation, valuation + window]`.
///
/// ξ-values of a normalized character are integers, so the window is an
/// integer number of ξ-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    pub direction: Character,
    pub valuation: i64,
    pub window: i64,
    pub terms: GroupRingElem,
    pub truncated: bool,
}

impl NovikovSeries {
    /// Embeds a nonzero polynomial exactly; terms above the window are
    /// dropped and flagged.
    pub fn from_elem(x: &GroupRingElem, xi: &Character, window: i64) -> Result<Self> {
        let v = x.valuation(xi).ok_or(Error::ZeroInput)?;
        let terms = x.truncate_above(xi, v + window);
        let truncated = terms.len() != x.len();
        Ok(NovikovSeries { direction: xi.clone(), valuation: v, window, terms, truncated })
    }

    /// The top ξ-level up to which this series is exact.
    pub fn precision(&self) -> i64 {
        self.valuation + self.window
    }

    /// Product; the result is exact on its own window of width
    /// `min(self.window, other.window)`.
    pub fn mul(&self, other: &NovikovSeries) -> NovikovSeries {
        let window = self.window.min(other.window);
        let valuation = self.valuation + other.valuation;
        let full = &self.terms * &other.terms;
        let terms = full.truncate_above(&self.direction, valuation + window);
        let truncated = self.truncated || other.truncated || terms.len() != full.len();
        NovikovSeries { direction: self.direction.clone(), valuation, window, terms, truncated }
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)?;
        if self.truncated {
            write!(f, " + O(ξ > {})", self.precision())?;
        }
        Ok(())
    }
}

/// Inverts `x` in the completion up to relative window `w`: writes
/// `x = c·g·(1 − y)` with `v(y) > 0` and sums the geometric series.
pub fn novikov_invert(x: &GroupRingElem, xi: &Character, w: i64) -> Result<NovikovSeries> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if x.rank() != xi.rank() {
        return Err(Error::DimensionMismatch { expected: xi.rank(), found: x.rank() });
    }
    let ring = x.ring();
    let (g, c) = x.lowest_monomial(xi).ok_or(Error::NotAUnit)?;
    let cinv = ring.inverse(&c).ok_or(Error::NotAUnit)?;
    let ginv = -&g;
    // y = 1 − c⁻¹g⁻¹x
    let one = GroupRingElem::one(ring, x.rank());
    let y = &one - &x.shift(&ginv).scale(&cinv);
    let mut sum = one.clone();
    let mut power = one;
    if !y.is_zero() {
        loop {
            power = (&power * &y).truncate_above(xi, w);
            if power.is_zero() {
                break;
            }
            sum.add_assign_ref(&power);
        }
    }
    let terms = sum.shift(&ginv).scale(&cinv);
    Ok(NovikovSeries {
        direction: xi.clone(),
        valuation: -xi.eval(&g),
        window: w,
        terms,
        truncated: !y.is_zero(),
    })
}

/// Inverse of a unit monomial `c·g` as an exact group ring element.
pub fn invert_monomial(g: &LatticePoint, c: &Scalar, x: &GroupRingElem) -> Option<GroupRingElem> {
    let inv = x.ring().inverse(c)?;
    Some(GroupRingElem::monomial(x.ring(), -g, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::*;

    fn xi(v: i64) -> Character {
        Character::from_ints(&[v]).unwrap()
    }

    #[test]
    fn one_minus_t() {
        let s = novikov_invert(&poly(Integers, &[(0, 1), (1, -1)]), &xi(1), 3).unwrap();
        assert_eq!(s.terms, poly(Integers, &[(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert!(s.truncated);
    }

    #[test]
    fn t_minus_two_negative_direction() {
        let s = novikov_invert(&poly(Integers, &[(1, 1), (0, -2)]), &xi(-1), 3).unwrap();
        assert_eq!(s.terms, poly(Integers, &[(-1, 1), (-2, 2), (-3, 4), (-4, 8)]));
        assert_eq!(s.valuation, 1);
    }

    #[test]
    fn t_minus_two_is_not_a_unit_over_z() {
        let r = novikov_invert(&poly(Integers, &[(1, 1), (0, -2)]), &xi(1), 3);
        assert_eq!(r, Err(Error::NotAUnit));
        assert!(novikov_invert(&poly(Rationals, &[(1, 1), (0, -2)]), &xi(1), 3).is_ok());
    }

    #[test]
    fn monomials_invert_exactly() {
        let s = novikov_invert(&poly(Integers, &[(2, -1)]), &xi(1), 5).unwrap();
        assert!(!s.truncated);
        assert_eq!(s.terms, poly(Integers, &[(-2, -1)]));
    }
}
