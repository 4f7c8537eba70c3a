//! Ring maps out of the rank-one integral Novikov completion, used to
//! certify nonvanishing when elimination over ℤ stalls.
//!
//! With ξ(t) = 1 the completion consists of series bounded below in t:
//! - reducing coefficients mod p lands in 𝔽_p((t));
//! - including ℤ ⊂ ℚ lands in ℚ((t));
//! - evaluating at a rational `a` with `v_p(a) > 0` for some prime p
//!   converges in ℚ_p (for ξ(t) = −1 one needs `v_p(a) < 0`).
//!
//! A contraction survives every ring map, so nonzero homology in degree
//! ≤ k after any of them shows ξ ∉ Σ^k.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::BasedFreeComplex;
use crate::decide::{partial_contraction, ContractionFailure};
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::Character;
use crate::matrix::Matrix;
use crate::qlinalg::{cycle_outside_image, DenseMatrix};
use crate::ring::{CoeffRing, Scalar};
use crate::smith::laurent_smith_diagonal;
use crate::solve::{solve_localized, FracMatrix, SolveOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// ℤ((t)) → ℚ((t)).
    FractionField,
    /// ℤ((t)) → 𝔽_p((t)).
    ModP(u64),
    /// t ↦ a in ℚ_p.
    Evaluate(Scalar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCycle {
    Laurent(Vec<GroupRingElem>),
    Rational(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationWitness {
    pub degree: usize,
    pub target: Specialization,
    pub cycle: WitnessCycle,
}

/// Whether `t ↦ a` extends continuously to the completion for ξ.
pub fn admissible_point(a: &Scalar, xi: &Character) -> bool {
    if a.is_zero() || xi.rank() != 1 {
        return false;
    }
    if xi.coeffs()[0] > 0 {
        !a.numer().abs().is_one()
    } else {
        !a.denom().is_one()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Evaluates a rank-one matrix at `t = a` over ℚ.
pub fn evaluate_matrix(m: &Matrix, a: &Scalar) -> Result<DenseMatrix> {
    let mut out = DenseMatrix::zero(CoeffRing::Rationals, m.rows(), m.cols());
    for ((i, j), e) in m.entries() {
        out.data[i][j] = e.eval_at(a)?;
    }
    Ok(out)
}

fn laurent_cycle_survives(c: &BasedFreeComplex, degree: usize, z: &[GroupRingElem], xi: &Character) -> Result<bool> {
    if !c.is_cycle(degree, z)? || z.iter().all(GroupRingElem::is_zero) {
        return Ok(false);
    }
    let mut col = Matrix::zero(c.ring(), 1, z.len(), 1);
    for (i, e) in z.iter().enumerate() {
        col.set(i, 0, e.clone());
    }
    Ok(matches!(
        solve_localized(&c.boundary(degree + 1), &FracMatrix::from_matrix(col), xi)?,
        SolveOutcome::Inconsistent { .. }
    ))
}

/// Checks a witness against the original integral complex.
pub fn verify_witness(c: &BasedFreeComplex, xi: &Character, k: usize, w: &SpecializationWitness) -> Result<bool> {
    if c.deck_rank() != 1 || c.ring() != CoeffRing::Integers || w.degree > k.min(c.dim()) {
        return Ok(false);
    }
    match (&w.target, &w.cycle) {
        (Specialization::FractionField, WitnessCycle::Laurent(z)) => {
            laurent_cycle_survives(&c.tensor_coefficients(CoeffRing::Rationals)?, w.degree, z, xi)
        }
        (Specialization::ModP(p), WitnessCycle::Laurent(z)) => {
            if !is_prime(*p) {
                return Ok(false);
            }
            laurent_cycle_survives(&c.tensor_coefficients(CoeffRing::PrimeField(*p))?, w.degree, z, xi)
        }
        (Specialization::Evaluate(a), WitnessCycle::Rational(z)) => {
            if !admissible_point(a, xi) || z.len() != c.rank(w.degree) || z.iter().all(Zero::is_zero) {
                return Ok(false);
            }
            let dn = evaluate_matrix(&c.boundary(w.degree), a)?;
            let up = evaluate_matrix(&c.boundary(w.degree + 1), a)?;
            Ok(dn.apply(z).iter().all(Zero::is_zero) && !up.in_column_space(z))
        }
        _ => Ok(false),
    }
}

/// Rational roots of a rank-one element with rational coefficients.
pub fn rational_roots(x: &GroupRingElem) -> Vec<Scalar> {
    let Some((lo, hi)) = x.degree_range() else { return Vec::new() };
    let lcm = x.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeff = |e: i64| (x.coeff(&crate::lattice::LatticePoint::t(e)) * Scalar::from_integer(lcm.clone())).to_integer();
    let a0 = coeff(lo);
    let an = coeff(hi);
    let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else { return Vec::new() };
    let mut roots = BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let a = Scalar::new(BigInt::from(sign) * p, q.clone());
                if x.eval_at(&a).is_ok_and(|v| v.is_zero()) {
                    roots.insert(a);
                }
            }
        }
    }
    roots.into_iter().collect()
}

/// Positive divisors of a nonzero integer below 10^12, by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn prime_factors(n: &BigInt, into: &mut BTreeSet<u64>) {
    let Some(mut n) = n.abs().to_u64() else { return };
    if n > 1_000_000_000_000 {
        return;
    }
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            into.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        into.insert(n);
    }
}

/// Searches the specializations above for nonvanishing in degrees ≤ k.
pub fn find_witness(c: &BasedFreeComplex, xi: &Character, k: usize) -> Result<Option<SpecializationWitness>> {
    if c.deck_rank() != 1 || c.ring() != CoeffRing::Integers {
        return Err(Error::RingUnsupported("specialization witnesses need deck rank 1 over Z".into()));
    }
    let top = k.min(c.dim());
    let cq = c.tensor_coefficients(CoeffRing::Rationals)?;
    if let Err(ContractionFailure::Inconsistent { degree, cycle }) = partial_contraction(&cq, xi, top)? {
        return Ok(Some(SpecializationWitness { degree, target: Specialization::FractionField, cycle: WitnessCycle::Laurent(cycle) }));
    }
    // Ranks over ℚ drop exactly at roots of the Smith factors.
    let mut points = BTreeSet::new();
    for i in 1..=top + 1 {
        for d in laurent_smith_diagonal(&cq.boundary(i))? {
            points.extend(rational_roots(&d).into_iter().filter(|a| admissible_point(a, xi)));
        }
    }
    for a in points {
        for j in 0..=top {
            let dn = evaluate_matrix(&c.boundary(j), &a)?;
            let up = evaluate_matrix(&c.boundary(j + 1), &a)?;
            if let Some(z) = cycle_outside_image(&dn, &up) {
                return Ok(Some(SpecializationWitness { degree: j, target: Specialization::Evaluate(a), cycle: WitnessCycle::Rational(z) }));
            }
        }
    }
    let mut primes = BTreeSet::new();
    for i in 1..=top + 1 {
        for (_, e) in c.boundary(i).entries() {
            for v in e.terms().values() {
                prime_factors(&v.to_integer(), &mut primes);
            }
        }
    }
    for p in primes.into_iter().take(32) {
        let cp = c.tensor_coefficients(CoeffRing::PrimeField(p))?;
        if let Err(ContractionFailure::Inconsistent { degree, cycle }) = partial_contraction(&cp, xi, top)? {
            return Ok(Some(SpecializationWitness { degree, target: Specialization::ModP(p), cycle: WitnessCycle::Laurent(cycle) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use CoeffRing::Integers;

    #[test]
    fn roots_and_admissibility() {
        let x = poly(Integers, &[(2, 2), (1, -5), (0, 2)]); // (2t − 1)(t − 2)
        let r = rational_roots(&x);
        assert_eq!(r, alloc::vec![Scalar::new(1.into(), 2.into()), crate::ring::int(2)]);
        let plus = Character::from_ints(&[1]).unwrap();
        assert!(admissible_point(&crate::ring::int(2), &plus));
        assert!(!admissible_point(&Scalar::new(1.into(), 2.into()), &plus));
        assert!(admissible_point(&Scalar::new(1.into(), 2.into()), &plus.negated()));
    }
}
