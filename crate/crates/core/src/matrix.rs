//! Sparse matrices over the group ring. Columns are images of basis vectors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::{Character, LatticePoint};
use crate::ring::CoeffRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: CoeffRing,
    deck_rank: usize,
    rows: usize,
    cols: usize,
    /// Keyed by `(col, row)` so that columns are contiguous.
    entries: BTreeMap<(usize, usize), GroupRingElem>,
}

impl Matrix {
    pub fn zero(ring: CoeffRing, deck_rank: usize, rows: usize, cols: usize) -> Self {
        Matrix { ring, deck_rank, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(ring: CoeffRing, deck_rank: usize, n: usize) -> Self {
        Self::scalar(&GroupRingElem::one(ring, deck_rank), n)
    }

    /// `x·id_n`.
    pub fn scalar(x: &GroupRingElem, n: usize) -> Self {
        let mut m = Self::zero(x.ring(), x.rank(), n, n);
        for i in 0..n {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Row-major dense construction.
    pub fn from_rows(ring: CoeffRing, deck_rank: usize, rows: Vec<Vec<GroupRingElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(ring, deck_rank, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn deck_rank(&self) -> usize {
        self.deck_rank
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero entries as `((row, col), entry)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &GroupRingElem)> {
        self.entries.iter().map(|((c, r), e)| ((*r, *c), e))
    }

    pub fn get(&self, i: usize, j: usize) -> GroupRingElem {
        self.entries.get(&(j, i)).cloned().unwrap_or_else(|| GroupRingElem::zero(self.ring, self.deck_rank))
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&GroupRingElem> {
        self.entries.get(&(j, i))
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElem) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if e.is_zero() {
            self.entries.remove(&(j, i));
        } else {
            self.entries.insert((j, i), e);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, e: &GroupRingElem) {
        if e.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, &cur + e);
    }

    /// Nonzero entries of column `j` as `(row, entry)`.
    pub fn column(&self, j: usize) -> Vec<(usize, &GroupRingElem)> {
        self.entries.range((j, 0)..(j + 1, 0)).map(|((_, r), e)| (*r, e)).collect()
    }

    pub fn column_vec(&self, j: usize) -> Vec<GroupRingElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn by_column(&self) -> BTreeMap<usize, Vec<(usize, &GroupRingElem)>> {
        let mut map: BTreeMap<usize, Vec<(usize, &GroupRingElem)>> = BTreeMap::new();
        for ((r, c), e) in self.entries() {
            map.entry(c).or_default().push((r, e));
        }
        map
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let cols_of_self = self.by_column();
        let mut out = Matrix::zero(self.ring, self.deck_rank, self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), GroupRingElem> = BTreeMap::new();
        for ((k, j), b) in other.entries() {
            if let Some(col) = cols_of_self.get(&k) {
                for (i, a) in col {
                    let prod = *a * b;
                    acc.entry((*i, j))
                        .and_modify(|e| e.add_assign_ref(&prod))
                        .or_insert(prod);
                }
            }
        }
        for ((i, j), e) in acc {
            out.set(i, j, e);
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[GroupRingElem]) -> Result<Vec<GroupRingElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = alloc::vec![GroupRingElem::zero(self.ring, self.deck_rank); self.rows];
        for ((i, j), a) in self.entries() {
            if !v[j].is_zero() {
                out[i].add_assign_ref(&(a * &v[j]));
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for ((i, j), e) in other.entries() {
            out.add_to(i, j, e);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| -e)
    }

    /// Entrywise left multiplication by `x`.
    pub fn scale(&self, x: &GroupRingElem) -> Matrix {
        self.map(|e| x * e)
    }

    pub fn map(&self, mut f: impl FnMut(&GroupRingElem) -> GroupRingElem) -> Matrix {
        let mut out = Matrix::zero(self.ring, self.deck_rank, self.rows, self.cols);
        for ((i, j), e) in self.entries() {
            out.set(i, j, f(e));
        }
        out
    }

    pub fn map_coefficients(&self, target: CoeffRing) -> Result<Matrix> {
        let mut out = Matrix::zero(target, self.deck_rank, self.rows, self.cols);
        for ((i, j), e) in self.entries() {
            out.set(i, j, e.map_coefficients(target)?);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.ring, self.deck_rank, self.cols, self.rows);
        for ((i, j), e) in self.entries() {
            out.set(j, i, e.clone());
        }
        out
    }

    /// Copies `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for ((i, j), e) in block.entries() {
            self.set(r0 + i, c0 + j, e.clone());
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zero(self.ring, self.deck_rank, rows, cols);
        for ((i, j), e) in self.entries() {
            if (r0..r0 + rows).contains(&i) && (c0..c0 + cols).contains(&j) {
                out.set(i - r0, j - c0, e.clone());
            }
        }
        out
    }

    /// Minimum valuation over all entries.
    pub fn valuation(&self, xi: &Character) -> Option<i64> {
        self.entries.values().filter_map(|e| e.valuation(xi)).min()
    }

    /// Largest ξ-spread of any entry.
    pub fn max_spread(&self, xi: &Character) -> i64 {
        self.entries.values().map(|e| e.spread(xi)).max().unwrap_or(0)
    }

    /// Multiplies every entry by the group element `g`.
    pub fn shift(&self, g: &LatticePoint) -> Matrix {
        self.map(|e| e.shift(g))
    }

    /// The first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &GroupRingElem)> {
        let mut best: Option<(usize, usize, &GroupRingElem)> = None;
        for ((i, j), e) in self.entries() {
            if best.is_none_or(|(bi, bj, _)| (i, j) < (bi, bj)) {
                best = Some((i, j, e));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::Integers;

    #[test]
    fn bs12_boundaries_compose_to_zero() {
        let z = GroupRingElem::zero(Integers, 1);
        let d2 = Matrix::from_rows(Integers, 1, alloc::vec![
            alloc::vec![poly(Integers, &[(1, 1), (0, -2)])],
            alloc::vec![z.clone()],
        ]);
        let d1 = Matrix::from_rows(Integers, 1, alloc::vec![alloc::vec![z, poly(Integers, &[(1, 1), (0, -1)])]]);
        assert!(d1.mul(&d2).unwrap().is_zero());
        assert!(d2.mul(&d1).unwrap().rows() == 2);
        assert!(d1.mul(&d1).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::from_rows(Integers, 1, alloc::vec![alloc::vec![poly(Integers, &[(0, 3), (2, -1)]), poly(Integers, &[(1, 1)])]]);
        let i2 = Matrix::identity(Integers, 1, 2);
        assert_eq!(a.mul(&i2).unwrap(), a);
        assert_eq!(Matrix::identity(Integers, 1, 1).mul(&a).unwrap(), a);
    }
}
