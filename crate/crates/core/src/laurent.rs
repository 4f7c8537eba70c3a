//! One-variable Laurent polynomials over a field: Euclidean division and gcds.
//!
//! Elements are rank-one [`GroupRingElem`]s; units are the nonzero
//! monomials `c·t^k`, and the Euclidean size is the span `max − min` of the
//! exponents.

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::LatticePoint;
use crate::ring::Scalar;

use num_traits::{One, Zero};

pub fn span(x: &GroupRingElem) -> i64 {
    x.degree_range().map_or(-1, |(lo, hi)| hi - lo)
}

fn leading(x: &GroupRingElem) -> (i64, Scalar) {
    let (g, c) = x.terms().iter().next_back().expect("nonzero");
    (g.0[0], c.clone())
}

fn check_field(x: &GroupRingElem) -> Result<()> {
    if x.rank() != 1 {
        return Err(Error::RankUnsupported { deck_rank: x.rank() });
    }
    if !x.ring().is_field() {
        return Err(Error::RingUnsupported("Laurent division needs field coefficients".into()));
    }
    Ok(())
}

/// `a = q·b + r` with `span(r) < span(b)` (or `r = 0`).
pub fn div_rem(a: &GroupRingElem, b: &GroupRingElem) -> Result<(GroupRingElem, GroupRingElem)> {
    check_field(b)?;
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ring = b.ring();
    let (blo, _) = b.degree_range().unwrap();
    let (bdeg, blead) = leading(b);
    let binv = ring.inverse(&blead).expect("field");
    let mut q = GroupRingElem::zero(ring, 1);
    let mut r = a.clone();
    // Long division from the top; stop once r fits below the top of b's span
    // relative to r's own lowest exponent.
    while !r.is_zero() {
        let (rlo, rhi) = r.degree_range().unwrap();
        if rhi - rlo < bdeg - blo {
            break;
        }
        let (rdeg, rlead) = leading(&r);
        let c = ring.reduce(&rlead * &binv);
        let shift = rdeg - bdeg;
        let m = GroupRingElem::monomial(ring, LatticePoint::t(shift), c);
        r = &r - &(&m * b);
        q = &q + &m;
    }
    Ok((q, r))
}

/// Strips the unit part: returns the monic polynomial with nonzero
/// constant term associated to `x`, or zero.
pub fn normalize(x: &GroupRingElem) -> GroupRingElem {
    if x.is_zero() {
        return x.clone();
    }
    let (lo, _) = x.degree_range().unwrap();
    let (_, lead) = leading(x);
    let inv = x.ring().inverse(&lead).expect("field");
    x.shift(&LatticePoint::t(-lo)).scale(&inv)
}

pub fn is_unit(x: &GroupRingElem) -> bool {
    !x.is_zero() && span(x) == 0
}

pub fn gcd(a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = div_rem(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(normalize(&x))
}

/// `a / b` when `b` divides `a` exactly.
pub fn exact_div(a: &GroupRingElem, b: &GroupRingElem) -> Result<Option<GroupRingElem>> {
    let (q, r) = div_rem(a, b)?;
    Ok(if r.is_zero() { Some(q) } else { None })
}

/// Whether the leading and trailing coefficients are ±1 (integer case) or
/// the polynomial is nonzero (field case).
pub fn has_unit_ends(x: &GroupRingElem) -> bool {
    let Some((lo, hi)) = x.degree_range() else { return false };
    let ring = x.ring();
    ring.is_unit(&x.coeff(&LatticePoint::t(lo))) && ring.is_unit(&x.coeff(&LatticePoint::t(hi)))
}

pub fn lead_coefficient(x: &GroupRingElem) -> Scalar {
    if x.is_zero() {
        Scalar::zero()
    } else {
        leading(x).1
    }
}

pub fn is_monic(x: &GroupRingElem) -> bool {
    lead_coefficient(x).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::*;

    #[test]
    fn division_reduces_span() {
        let a = poly(Rationals, &[(-2, 1), (0, 3), (3, 1)]);
        let b = poly(Rationals, &[(1, 2), (2, -1)]);
        let (q, r) = div_rem(&a, &b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(span(&r) < span(&b));
    }

    #[test]
    fn gcd_of_shifted_multiples() {
        let f = poly(Rationals, &[(0, 1), (1, -1), (2, 1)]);
        let a = &f * &poly(Rationals, &[(-3, 2), (1, 5)]);
        let b = &f * &poly(Rationals, &[(4, 1), (5, -1)]);
        assert_eq!(gcd(&a, &b).unwrap(), f);
        assert!(is_unit(&gcd(&poly(Rationals, &[(0, 1), (1, -2)]), &poly(Rationals, &[(0, 1), (1, -1)])).unwrap()));
    }
}
