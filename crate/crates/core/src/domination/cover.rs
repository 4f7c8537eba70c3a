//! Integer chains on the infinite cyclic cover.
//!
//! A cell `(q, j)` is the basis element `t^q x_j`. Maps that commute with
//! the deck action are stored column-wise as `(row, offset, coefficient)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub type Cell = (i64, usize);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverChain {
    terms: BTreeMap<Cell, BigInt>,
}

impl CoverChain {
    pub fn zero() -> Self {
        CoverChain { terms: BTreeMap::new() }
    }

    pub fn cell(q: i64, j: usize) -> Self {
        let mut c = CoverChain::zero();
        c.terms.insert((q, j), BigInt::from(1));
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Cell, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, cell: &Cell) -> BigInt {
        self.terms.get(cell).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, cell: Cell, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(cell).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&cell);
        }
    }

    pub fn add_scaled(&mut self, other: &CoverChain, c: &BigInt) {
        for (cell, v) in &other.terms {
            self.add_term(*cell, &(v * c));
        }
    }

    pub fn add_assign(&mut self, other: &CoverChain) {
        self.add_scaled(other, &BigInt::from(1));
    }

    pub fn sub_assign(&mut self, other: &CoverChain) {
        self.add_scaled(other, &BigInt::from(-1));
    }

    pub fn sub(&self, other: &CoverChain) -> CoverChain {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().map(|(q, _)| *q)
    }

    /// Linear extension of a map defined on cells.
    pub fn map_cells(&self, mut f: impl FnMut(Cell) -> Result<CoverChain>) -> Result<CoverChain> {
        let mut out = CoverChain::zero();
        for (cell, c) in &self.terms {
            out.add_scaled(&f(*cell)?, c);
        }
        Ok(out)
    }
}

/// An equivariant map of the cover, one column per source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivMap {
    cols: Vec<Vec<(usize, i64, BigInt)>>,
}

impl EquivMap {
    /// Reads a matrix over `ℤ[t, t⁻¹]`; entries must be integral.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.deck_rank() != 1 {
            return Err(Error::RankUnsupported { deck_rank: m.deck_rank() });
        }
        let mut cols = alloc::vec![Vec::new(); m.cols()];
        for ((i, j), e) in m.entries() {
            for (g, c) in e.terms() {
                if !c.is_integer() {
                    return Err(Error::InvalidCoefficient(alloc::format!("{c} is not an integer")));
                }
                cols[j].push((i, g.0[0], c.to_integer()));
            }
        }
        Ok(EquivMap { cols })
    }

    pub fn apply_cell(&self, (q, j): Cell) -> CoverChain {
        let mut out = CoverChain::zero();
        if let Some(col) = self.cols.get(j) {
            for (i, off, c) in col {
                out.add_term((q + off, *i), c);
            }
        }
        out
    }

    pub fn apply(&self, z: &CoverChain) -> CoverChain {
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            out.add_scaled(&self.apply_cell(*cell), c);
        }
        out
    }
}

/// Boundaries of a deck-rank-1 complex acting on cover chains.
///
/// The support of a cell is its own position together with the supports of
/// the cells in its boundary, recursively down to degree 0. The support of a
/// chain is the union over its cells. Faces therefore never reach farther
/// than the cell, and `∂` does not increase norms.
#[derive(Clone, Debug)]
pub struct Cover {
    ranks: Vec<usize>,
    boundaries: Vec<EquivMap>,
    /// `(lowest, highest)` support offset of `x_j` in each degree.
    extents: Vec<Vec<(i64, i64)>>,
}

impl Cover {
    pub fn new(c: &BasedFreeComplex) -> Result<Self> {
        if c.deck_rank() != 1 {
            return Err(Error::RankUnsupported { deck_rank: c.deck_rank() });
        }
        let top = c.dim() + 1;
        let boundaries: Vec<EquivMap> =
            (1..=top).map(|i| EquivMap::from_matrix(&c.boundary(i))).collect::<Result<_>>()?;
        let ranks: Vec<usize> = (0..=top).map(|i| c.rank(i)).collect();
        let mut extents: Vec<Vec<(i64, i64)>> = alloc::vec![alloc::vec![(0, 0); ranks[0]]];
        for s in 1..=top {
            let below = &extents[s - 1];
            let row = (0..ranks[s])
                .map(|j| {
                    boundaries[s - 1].cols[j]
                        .iter()
                        .fold((0, 0), |(lo, hi), (i, off, _)| (lo.min(off + below[*i].0), hi.max(off + below[*i].1)))
                })
                .collect();
            extents.push(row);
        }
        Ok(Cover { ranks, boundaries, extents })
    }

    pub fn rank(&self, s: usize) -> usize {
        self.ranks.get(s).copied().unwrap_or(0)
    }

    /// `∂_s z` for `z ∈ C_s`.
    pub fn boundary(&self, s: usize, z: &CoverChain) -> CoverChain {
        match s.checked_sub(1).and_then(|i| self.boundaries.get(i)) {
            Some(d) => d.apply(z),
            None => CoverChain::zero(),
        }
    }

    pub fn boundary_cell(&self, s: usize, cell: Cell) -> CoverChain {
        match s.checked_sub(1).and_then(|i| self.boundaries.get(i)) {
            Some(d) => d.apply_cell(cell),
            None => CoverChain::zero(),
        }
    }

    /// Lowest and highest support position of a cell.
    pub fn cell_span(&self, s: usize, (q, j): Cell) -> (i64, i64) {
        let (lo, hi) = self.extents.get(s).and_then(|e| e.get(j)).copied().unwrap_or((0, 0));
        (q + lo, q + hi)
    }

    /// Lowest and highest support position of a chain, `None` for zero.
    pub fn span(&self, s: usize, z: &CoverChain) -> Option<(i64, i64)> {
        z.terms().keys().map(|&cell| self.cell_span(s, cell)).reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// Largest `|q|` over the support; zero for the zero chain.
    pub fn norm(&self, s: usize, z: &CoverChain) -> i64 {
        self.span(s, z).map_or(0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    pub fn cell_norm(&self, s: usize, cell: Cell) -> i64 {
        let (lo, hi) = self.cell_span(s, cell);
        lo.abs().max(hi.abs())
    }

    /// Largest distance between a support point of `a ∈ C_s` and one of
    /// `b ∈ C_u`; zero if either is zero.
    pub fn diam(&self, s: usize, a: &CoverChain, u: usize, b: &CoverChain) -> i64 {
        match (self.span(s, a), self.span(u, b)) {
            (Some((a0, a1)), Some((b0, b1))) => (a1 - b0).abs().max((b1 - a0).abs()),
            _ => 0,
        }
    }

    /// Minimum of `σ·q` over the support for `σ = ±1`, `None` for zero.
    pub fn valuation(&self, s: usize, z: &CoverChain, sigma: i64) -> Option<i64> {
        self.span(s, z).map(|(lo, hi)| if sigma > 0 { lo } else { -hi })
    }

    /// All cells of degree `s` at positions `|q| ≤ radius`.
    pub fn cells_within(&self, s: usize, radius: i64) -> impl Iterator<Item = Cell> + '_ {
        let r = self.rank(s);
        (-radius..=radius).flat_map(move |q| (0..r).map(move |j| (q, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::builtin;
    use crate::ring::CoeffRing;

    #[test]
    fn trefoil_face_support_reaches_through_edges() {
        let c = builtin("trefoil", CoeffRing::Integers).unwrap();
        let cov = Cover::new(&c).unwrap();
        // the relator cell meets edges at 0..2, whose ends reach 3
        assert_eq!(cov.cell_span(2, (0, 0)), (0, 3));
        let f = CoverChain::cell(0, 0);
        assert!(cov.norm(1, &cov.boundary(2, &f)) <= cov.norm(2, &f));
    }

    #[test]
    fn circle_cell_norm_includes_boundary() {
        let c = builtin("circle", CoeffRing::Integers).unwrap();
        let cov = Cover::new(&c).unwrap();
        // ∂e = (t − 1)v, so t^2 e reaches position 3
        assert_eq!(cov.cell_norm(1, (2, 0)), 3);
        assert_eq!(cov.cell_norm(1, (-1, 0)), 1);
        assert_eq!(cov.norm(1, &CoverChain::cell(2, 0)), 3);
        let z = CoverChain::cell(0, 0);
        assert_eq!(cov.diam(1, &z, 1, &CoverChain::cell(3, 0)), 4);
    }
}
