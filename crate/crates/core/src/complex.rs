//! Finite free based chain complexes over R[ℤ^r].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::Character;
use crate::matrix::Matrix;
use crate::ring::CoeffRing;

/// `C_n → … → C_1 → C_0` with `boundaries[i - 1] = ∂_i : C_i → C_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedFreeComplex {
    ring: CoeffRing,
    deck_rank: usize,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

/// First failure found by [`BasedFreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape { degree: usize, message: String },
    /// `(∂_{degree-1} ∂_degree)[row][col] ≠ 0`.
    NonzeroComposite { degree: usize, row: usize, col: usize, value: GroupRingElem },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { degree, message } => write!(f, "degree {degree}: {message}"),
            Violation::NonzeroComposite { degree, row, col, value } => write!(
                f,
                "d_{}∘d_{} has nonzero entry ({row},{col}) = {value}",
                degree - 1,
                degree
            ),
        }
    }
}

impl BasedFreeComplex {
    /// Builds a complex after checking shapes, rings and ∂∂ = 0.
    pub fn new(ring: CoeffRing, deck_rank: usize, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(ring, deck_rank, ranks, boundaries);
        match c.validate() {
            Ok(()) => Ok(c),
            Err(v) => Err(Error::InvalidComplex(format!("{v}"))),
        }
    }

    /// Builds without validation; call [`BasedFreeComplex::validate`] to check.
    pub fn new_unchecked(ring: CoeffRing, deck_rank: usize, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Self {
        BasedFreeComplex { ring, deck_rank, ranks, boundaries, labels: None }
    }

    pub fn zero(ring: CoeffRing, deck_rank: usize) -> Self {
        Self::new_unchecked(ring, deck_rank, alloc::vec![0], Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn deck_rank(&self) -> usize {
        self.deck_rank
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Highest degree with a nonzero rank (0 for the zero complex).
    pub fn dim(&self) -> usize {
        self.ranks.iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    /// Highest stored degree, which may carry rank 0.
    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }

    /// `∂_i`, including the zero maps out of degree 0 and into the top.
    pub fn boundary(&self, i: usize) -> Matrix {
        if i >= 1 && i <= self.boundaries.len() {
            self.boundaries[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.rank(i - 1) };
            Matrix::zero(self.ring, self.deck_rank, rows, self.rank(i))
        }
    }

    pub fn boundary_ref(&self, i: usize) -> Option<&Matrix> {
        if i >= 1 {
            self.boundaries.get(i - 1)
        } else {
            None
        }
    }

    pub fn validate(&self) -> core::result::Result<(), Violation> {
        if self.boundaries.len() + 1 != self.ranks.len().max(1) {
            return Err(Violation::Shape {
                degree: self.boundaries.len(),
                message: format!("{} boundary maps for {} degrees", self.boundaries.len(), self.ranks.len()),
            });
        }
        for (k, d) in self.boundaries.iter().enumerate() {
            let i = k + 1;
            if d.rows() != self.ranks[i - 1] || d.cols() != self.ranks[i] {
                return Err(Violation::Shape {
                    degree: i,
                    message: format!(
                        "boundary is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        self.ranks[i - 1],
                        self.ranks[i]
                    ),
                });
            }
            if d.ring() != self.ring || d.deck_rank() != self.deck_rank {
                return Err(Violation::Shape { degree: i, message: "ring or deck rank mismatch".into() });
            }
            for (_, e) in d.entries() {
                if e.ring() != self.ring || e.rank() != self.deck_rank {
                    return Err(Violation::Shape { degree: i, message: "entry in a different ring".into() });
                }
            }
        }
        for i in 2..self.ranks.len() {
            let comp = self.boundaries[i - 2].mul(&self.boundaries[i - 1]).expect("shapes checked");
            if let Some((row, col, value)) = comp.first_nonzero() {
                return Err(Violation::NonzeroComposite { degree: i, row, col, value: value.clone() });
            }
        }
        Ok(())
    }

    /// Entrywise coefficient change along ℤ → ℚ, ℤ → 𝔽_p or ℚ → 𝔽_p.
    pub fn tensor_coefficients(&self, target: CoeffRing) -> Result<BasedFreeComplex> {
        let boundaries = self.boundaries.iter().map(|d| d.map_coefficients(target)).collect::<Result<Vec<_>>>()?;
        Ok(BasedFreeComplex {
            ring: target,
            deck_rank: self.deck_rank,
            ranks: self.ranks.clone(),
            boundaries,
            labels: self.labels.clone(),
        })
    }

    /// Largest ξ-spread of any boundary entry (at least 1).
    pub fn boundary_spread(&self, xi: &Character) -> i64 {
        self.boundaries.iter().map(|d| d.max_spread(xi)).max().unwrap_or(0).max(1)
    }

    /// Default decision window: 64 times the boundary spread.
    pub fn default_window(&self, xi: &Character) -> i64 {
        64 * self.boundary_spread(xi)
    }

    /// Appends zero degrees until the top degree is at least `n`.
    pub fn padded_to(&self, n: usize) -> BasedFreeComplex {
        let mut c = self.clone();
        while c.top_degree() < n || c.ranks.is_empty() {
            let top = c.rank(c.top_degree());
            c.ranks.push(0);
            if c.ranks.len() > 1 {
                c.boundaries.push(Matrix::zero(c.ring, c.deck_rank, top, 0));
            }
        }
        c
    }

    pub fn zero_vector(&self, degree: usize) -> Vec<GroupRingElem> {
        alloc::vec![GroupRingElem::zero(self.ring, self.deck_rank); self.rank(degree)]
    }

    pub fn is_cycle(&self, degree: usize, z: &[GroupRingElem]) -> Result<bool> {
        if z.len() != self.rank(degree) {
            return Err(Error::DimensionMismatch { expected: self.rank(degree), found: z.len() });
        }
        Ok(self.boundary(degree).apply(z)?.iter().all(GroupRingElem::is_zero))
    }
}

impl core::error::Error for Violation {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::*;
    use alloc::vec;

    #[test]
    fn tampered_bs12_reports_first_entry() {
        let z = GroupRingElem::zero(Integers, 1);
        let d2 = Matrix::from_rows(Integers, 1, vec![vec![poly(Integers, &[(1, 1), (0, -2)])], vec![z.clone()]]);
        let good = Matrix::from_rows(Integers, 1, vec![vec![z, poly(Integers, &[(1, 1), (0, -1)])]]);
        let bad = Matrix::from_rows(Integers, 1, vec![vec![poly(Integers, &[(0, 1)]), poly(Integers, &[(1, 1), (0, -1)])]]);
        assert!(BasedFreeComplex::new(Integers, 1, vec![1, 2, 1], vec![good, d2.clone()]).is_ok());
        let c = BasedFreeComplex::new_unchecked(Integers, 1, vec![1, 2, 1], vec![bad, d2]);
        match c.validate() {
            Err(Violation::NonzeroComposite { degree: 2, row: 0, col: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_errors_are_reported() {
        let d = Matrix::zero(Rationals, 1, 2, 1);
        let c = BasedFreeComplex::new_unchecked(Rationals, 1, vec![1, 1], vec![d]);
        assert!(matches!(c.validate(), Err(Violation::Shape { degree: 1, .. })));
        assert!(BasedFreeComplex::zero(Integers, 1).validate().is_ok());
    }

    #[test]
    fn reduction_mod_two() {
        let d = Matrix::from_rows(Integers, 1, vec![vec![poly(Integers, &[(1, 1), (0, -2)])]]);
        let c = BasedFreeComplex::new(Integers, 1, vec![1, 1], vec![d]).unwrap();
        let c2 = c.tensor_coefficients(PrimeField(2)).unwrap();
        assert_eq!(c2.boundary(1).get(0, 0), poly(PrimeField(2), &[(1, 1)]));
    }
}
