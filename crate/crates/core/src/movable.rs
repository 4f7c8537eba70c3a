//! Movability of homology classes towards the ξ-end.
//!
//! A cycle `z` is movable exactly when `Δ·z` is a boundary for some `Δ`
//! with ξ-lowest coefficient 1, i.e. when `z` becomes a boundary over the
//! localization S⁻¹Λ.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::Character;
use crate::matrix::Matrix;
use crate::qlinalg::DenseMatrix;
use crate::ring::CoeffRing;
use crate::smith::laurent_smith_diagonal;
use crate::solve::{solve_localized, FracMatrix, SolveOutcome};
use crate::specialize::{admissible_point, evaluate_matrix, rational_roots, Specialization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Movability {
    /// `Δ·z = ∂w` with `Δ` normalized to ξ-lowest part `1`.
    Movable { delta: GroupRingElem, witness: Vec<GroupRingElem> },
    NotMovable { reason: String, specialization: Option<Specialization> },
    Undecided { diagnostics: String },
}

/// Exact check of a movability witness: `Δ` has ξ-lowest part 1 and
/// `Δ·z = ∂_{q+1} w`.
pub fn check_movable_witness(c: &BasedFreeComplex, q: usize, z: &[GroupRingElem], xi: &Character, delta: &GroupRingElem, w: &[GroupRingElem]) -> Result<bool> {
    if !delta.lowest_part(xi).is_ok_and(|l| l.is_one()) {
        return Ok(false);
    }
    let lhs: Vec<GroupRingElem> = z.iter().map(|e| delta * e).collect();
    Ok(c.boundary(q + 1).apply(w)? == lhs)
}

fn column(c: &BasedFreeComplex, z: &[GroupRingElem]) -> Matrix {
    let mut m = Matrix::zero(c.ring(), c.deck_rank(), z.len(), 1);
    for (i, e) in z.iter().enumerate() {
        m.set(i, 0, e.clone());
    }
    m
}

pub fn movable_to_infinity(c: &BasedFreeComplex, q: usize, z: &[GroupRingElem], xi: &Character) -> Result<Movability> {
    if xi.rank() != c.deck_rank() {
        return Err(Error::DimensionMismatch { expected: c.deck_rank(), found: xi.rank() });
    }
    if !c.is_cycle(q, z)? {
        return Err(Error::NotACycle { degree: q });
    }
    let ring = c.ring();
    let rank = c.deck_rank();
    if z.iter().all(GroupRingElem::is_zero) {
        return Ok(Movability::Movable { delta: GroupRingElem::one(ring, rank), witness: c.zero_vector(q + 1) });
    }
    let d = c.boundary(q + 1);
    match solve_localized(&d, &FracMatrix::from_matrix(column(c, z)), xi)? {
        SolveOutcome::Solved(y) => {
            let (g, coef) = y.den.lowest_monomial(xi).ok_or(Error::NotAUnit)?;
            let inv = ring.inverse(&coef).ok_or(Error::NotAUnit)?;
            let unit = GroupRingElem::monomial(ring, -&g, inv);
            let delta = &y.den * &unit;
            let witness: Vec<GroupRingElem> = y.num.column_vec(0).iter().map(|e| e * &unit).collect();
            if !check_movable_witness(c, q, z, xi, &delta, &witness)? {
                return Err(Error::IdentityViolation("movability witness failed its check".into()));
            }
            Ok(Movability::Movable { delta, witness })
        }
        SolveOutcome::Inconsistent { .. } => {
            if rank == 1 {
                Ok(Movability::NotMovable { reason: "the class survives over the localization".into(), specialization: None })
            } else {
                Ok(Movability::Undecided { diagnostics: "class survives over the localization; negative answers need deck rank 1".into() })
            }
        }
        SolveOutcome::Stuck { column } => {
            if rank == 1 && ring == CoeffRing::Integers {
                if let Some(s) = not_movable_specialization(c, q, z, xi)? {
                    return Ok(Movability::NotMovable { reason: "the class survives a ring map out of the completion".into(), specialization: Some(s) });
                }
            }
            Ok(Movability::Undecided { diagnostics: format!("no pivot with unit lowest part in column {column} of d_{}", q + 1) })
        }
    }
}

/// Ring maps under which `Δ` stays invertible and `z` stays off the image.
fn not_movable_specialization(c: &BasedFreeComplex, q: usize, z: &[GroupRingElem], xi: &Character) -> Result<Option<Specialization>> {
    let cq = c.tensor_coefficients(CoeffRing::Rationals)?;
    let zq: Vec<GroupRingElem> = z.iter().map(|e| e.map_coefficients(CoeffRing::Rationals)).collect::<Result<_>>()?;
    let col = column(&cq, &zq);
    if matches!(solve_localized(&cq.boundary(q + 1), &FracMatrix::from_matrix(col), xi)?, SolveOutcome::Inconsistent { .. }) {
        return Ok(Some(Specialization::FractionField));
    }
    let d = c.boundary(q + 1);
    let mut points = Vec::new();
    for f in laurent_smith_diagonal(&d.map_coefficients(CoeffRing::Rationals)?)? {
        points.extend(rational_roots(&f).into_iter().filter(|a| admissible_point(a, xi)));
    }
    for e in z {
        points.extend(rational_roots(&e.map_coefficients(CoeffRing::Rationals)?).into_iter().filter(|a| admissible_point(a, xi)));
    }
    for a in points {
        let up: DenseMatrix = evaluate_matrix(&d, &a)?;
        let za = z.iter().map(|e| e.eval_at(&a)).collect::<Result<Vec<_>>>()?;
        if !up.in_column_space(&za) {
            return Ok(Some(Specialization::Evaluate(a)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::builtin;
    use crate::group_ring::poly;
    use CoeffRing::*;

    #[test]
    fn wedge_point_class_is_movable() {
        let c = builtin("wedge-s1-s2", Integers).unwrap();
        let xi = Character::from_ints(&[1]).unwrap();
        let z = alloc::vec![GroupRingElem::one(Integers, 1)];
        match movable_to_infinity(&c, 0, &z, &xi).unwrap() {
            Movability::Movable { delta, .. } => assert_eq!(delta, poly(Integers, &[(0, 1), (1, -1)])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wedge_sphere_class_is_not_movable() {
        let c = builtin("wedge-s1-s2", Rationals).unwrap();
        for s in [1, -1] {
            let xi = Character::from_ints(&[s]).unwrap();
            let z = alloc::vec![GroupRingElem::one(Rationals, 1)];
            assert!(matches!(movable_to_infinity(&c, 2, &z, &xi).unwrap(), Movability::NotMovable { .. }));
        }
    }

    #[test]
    fn non_cycles_are_rejected() {
        let c = builtin("circle", Integers).unwrap();
        let xi = Character::from_ints(&[1]).unwrap();
        let z = alloc::vec![GroupRingElem::one(Integers, 1)];
        assert_eq!(movable_to_infinity(&c, 1, &z, &xi), Err(Error::NotACycle { degree: 1 }));
    }
}
