//! Chain maps and chain homotopies between based free complexes.

use alloc::vec::Vec;

use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Degree-0 map given by one matrix per degree, `maps[i] : C_i → D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: Vec<Matrix>,
}

/// Degree +1 map, `maps[i] : C_i → D_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    pub maps: Vec<Matrix>,
}

impl ChainMap {
    pub fn identity(c: &BasedFreeComplex) -> ChainMap {
        ChainMap { maps: (0..=c.dim()).map(|i| Matrix::identity(c.ring(), c.deck_rank(), c.rank(i))).collect() }
    }

    pub fn zero(src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> ChainMap {
        let top = src.dim().max(tgt.dim());
        ChainMap { maps: (0..=top).map(|i| Matrix::zero(src.ring(), src.deck_rank(), tgt.rank(i), src.rank(i))).collect() }
    }

    pub fn top(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    /// The matrix in degree `i`; shape is `tgt.rank(i) × src.rank(i)`.
    pub fn degree(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn check_shapes(&self, src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> Result<()> {
        for i in 0..=src.dim().max(tgt.dim()) {
            let m = self.maps.get(i).ok_or(Error::DimensionMismatch { expected: i + 1, found: self.maps.len() })?;
            if m.rows() != tgt.rank(i) || m.cols() != src.rank(i) {
                return Err(Error::DimensionMismatch { expected: tgt.rank(i) * src.rank(i), found: m.rows() * m.cols() });
            }
        }
        Ok(())
    }

    /// Checks `∂f = f∂` in every degree, returning the first bad degree.
    pub fn first_non_commuting(&self, src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> Result<Option<usize>> {
        self.check_shapes(src, tgt)?;
        for i in 1..=src.dim().max(tgt.dim()) {
            let lhs = tgt.boundary(i).mul(&self.maps[i])?;
            let rhs = self.maps[i - 1].mul(&src.boundary(i))?;
            if lhs != rhs {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_chain_map(&self, src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> bool {
        matches!(self.first_non_commuting(src, tgt), Ok(None))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if self.maps.len() != first.maps.len() {
            return Err(Error::DimensionMismatch { expected: self.maps.len(), found: first.maps.len() });
        }
        let maps = self.maps.iter().zip(&first.maps).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(ChainMap { maps })
    }

    /// `f^m` for a self-map, `m ≥ 1`.
    pub fn iterate(&self, m: usize) -> Result<ChainMap> {
        if m == 0 {
            return Err(Error::InvalidComplex("iterate needs m >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(ChainMap { maps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(ChainMap { maps })
    }
}

impl ChainHomotopy {
    pub fn zero(src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> ChainHomotopy {
        let top = src.dim().max(tgt.dim());
        ChainHomotopy {
            maps: (0..=top).map(|i| Matrix::zero(src.ring(), src.deck_rank(), tgt.rank(i + 1), src.rank(i))).collect(),
        }
    }

    /// `H_i`, or a zero map when not stored.
    pub fn degree(&self, i: usize, src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> Matrix {
        match self.maps.get(i) {
            Some(m) => m.clone(),
            None => Matrix::zero(src.ring(), src.deck_rank(), tgt.rank(i + 1), src.rank(i)),
        }
    }

    /// `(∂H + H∂)_i`.
    pub fn boundary_part(&self, i: usize, src: &BasedFreeComplex, tgt: &BasedFreeComplex) -> Result<Matrix> {
        let a = tgt.boundary(i + 1).mul(&self.degree(i, src, tgt))?;
        if i == 0 {
            return Ok(a);
        }
        let b = self.degree(i - 1, src, tgt).mul(&src.boundary(i))?;
        a.add(&b)
    }

    /// Composite `self ∘ f` for a self-map `f` of the source.
    pub fn then_after(&self, f: &ChainMap) -> Result<ChainHomotopy> {
        let maps = self.maps.iter().zip(&f.maps).map(|(h, m)| h.mul(m)).collect::<Result<_>>()?;
        Ok(ChainHomotopy { maps })
    }

    pub fn add(&self, other: &ChainHomotopy) -> Result<ChainHomotopy> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(ChainHomotopy { maps })
    }
}

/// Checks `∂H + H∂ = f − g` in degrees `0..=k`; `None` means every degree.
pub fn check_homotopy(
    c: &BasedFreeComplex,
    h: &ChainHomotopy,
    f: &ChainMap,
    g: &ChainMap,
    k: Option<usize>,
) -> Result<Option<usize>> {
    let top = k.unwrap_or(c.dim()).min(c.dim());
    for i in 0..=top {
        let lhs = h.boundary_part(i, c, c)?;
        let rhs = f.maps[i].sub(&g.maps[i])?;
        if lhs != rhs {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Given `∂H + H∂ = 1 − A`, returns `H(1 + A + … + A^{m-1})`, a homotopy
/// from the identity to `A^m`.
pub fn telescope(h: &ChainHomotopy, a: &ChainMap, m: usize) -> Result<ChainHomotopy> {
    let mut power = ChainMap { maps: a.maps.iter().map(|x| Matrix::identity(x.ring(), x.deck_rank(), x.cols())).collect() };
    let mut sum = h.then_after(&power)?;
    for _ in 1..m {
        power = a.compose(&power)?;
        sum = sum.add(&h.then_after(&power)?)?;
    }
    Ok(sum)
}
