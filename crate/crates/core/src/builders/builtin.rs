//! Named example complexes with their expected verdicts.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::builders::presentation::{presentation_complex, PresentationInput};
use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::LatticePoint;
use crate::matrix::Matrix;
use crate::ring::{int, CoeffRing};

pub const BUILTIN_NAMES: [&str; 5] = ["circle", "torus", "wedge-s1-s2", "trefoil", "bs12"];

pub fn builtin_presentation(name: &str) -> Option<PresentationInput> {
    let t = LatticePoint::t;
    let p = match name {
        "circle" => PresentationInput::new(&["x"], &[], vec![t(1)]),
        "torus" => PresentationInput::new(
            &["a", "b"],
            &["aba^-1b^-1"],
            vec![LatticePoint::new(vec![1, 0]), LatticePoint::new(vec![0, 1])],
        ),
        "trefoil" => PresentationInput::new(&["x", "y"], &["xyxy^-1x^-1y^-1"], vec![t(1), t(1)]),
        "bs12" => PresentationInput::new(&["a", "t"], &["tat^-1a^-2"], vec![t(0), t(1)]),
        _ => return None,
    };
    Some(p.expect("builtin presentations are valid"))
}

/// The named complex over `ring`.
pub fn builtin(name: &str, ring: CoeffRing) -> Result<BasedFreeComplex> {
    if let Some(p) = builtin_presentation(name) {
        return presentation_complex(&p, ring);
    }
    match name {
        "wedge-s1-s2" => {
            let one = GroupRingElem::one(ring, 1);
            let t = GroupRingElem::monomial(ring, LatticePoint::t(1), int(1));
            let mut d1 = Matrix::zero(ring, 1, 1, 1);
            d1.set(0, 0, &t - &one);
            let d2 = Matrix::zero(ring, 1, 1, 1);
            let labels = vec![vec!["v".to_string()], vec!["e".to_string()], vec!["s".to_string()]];
            Ok(BasedFreeComplex::new(ring, 1, vec![1, 1, 1], vec![d1, d2])?.with_labels(labels))
        }
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

/// An expected verdict: direction, degree bound, coefficients, status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Golden {
    pub direction: Vec<i64>,
    pub k: usize,
    pub ring: CoeffRing,
    pub status: &'static str,
}

fn g(direction: &[i64], k: usize, ring: CoeffRing, status: &'static str) -> Golden {
    Golden { direction: direction.to_vec(), k, ring, status }
}

/// Verdicts each builtin must reproduce.
pub fn golden_verdicts(name: &str) -> Vec<Golden> {
    use CoeffRing::{Integers as Z, Rationals as Q};
    match name {
        "circle" => vec![g(&[1], 1, Z, "Yes"), g(&[-1], 1, Z, "Yes"), g(&[1], 1, Q, "Yes"), g(&[-1], 1, Q, "Yes")],
        "torus" => vec![
            g(&[1, 0], 2, Z, "Yes"),
            g(&[-1, 0], 2, Z, "Yes"),
            g(&[0, 1], 2, Z, "Yes"),
            g(&[-2, 1], 2, Z, "Yes"),
            g(&[3, 5], 2, Q, "Yes"),
        ],
        "wedge-s1-s2" => vec![
            g(&[1], 1, Z, "Yes"),
            g(&[-1], 1, Z, "Yes"),
            g(&[1], 2, Z, "No"),
            g(&[-1], 2, Z, "No"),
            g(&[1], 2, Q, "No"),
            g(&[-1], 2, Q, "No"),
        ],
        "trefoil" => vec![
            g(&[1], 2, Z, "Yes"),
            g(&[-1], 2, Z, "Yes"),
            g(&[1], 2, Q, "Yes"),
            g(&[-1], 2, Q, "Yes"),
        ],
        "bs12" => vec![
            g(&[-1], 2, Z, "Yes"),
            g(&[1], 1, Z, "No"),
            g(&[1], 2, Q, "Yes"),
            g(&[-1], 2, Q, "Yes"),
        ],
        _ => Vec::new(),
    }
}
