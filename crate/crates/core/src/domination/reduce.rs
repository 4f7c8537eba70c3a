//! The homotopy `Φ`, the chain map `ζ = 1 − ∂Φ − Φ∂` and the finite
//! complex `D` of chains of norm at most `a + n·m`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::BasedFreeComplex;
use crate::domination::cover::{Cell, Cover, CoverChain};
use crate::domination::push::{le, PushMaps};
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::matrix::Matrix;
use crate::ring::{int, CoeffRing, Scalar};

/// Evaluates `Φ` and `ζ` on cells, memoised.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub push: PushMaps,
    phi_memo: BTreeMap<(usize, Cell), CoverChain>,
    sum_memo: BTreeMap<(usize, Cell, usize), CoverChain>,
}

impl Reducer {
    pub fn new(push: PushMaps) -> Self {
        Reducer { push, phi_memo: BTreeMap::new(), sum_memo: BTreeMap::new() }
    }

    pub fn cover(&self) -> &Cover {
        &self.push.cover
    }

    /// The `l` with `norm ∈ (a + l·r, a + (l+1)·r]`, or `None` inside `a`.
    pub fn band(&self, norm: i64) -> Option<usize> {
        let c = &self.push.constants;
        if le(norm, &c.a) {
            return None;
        }
        let l = ((int(norm) - &c.a) / &c.r).ceil().to_integer() - BigInt::one();
        usize::try_from(l).ok()
    }

    /// `Φ_s(tx) = Σ_{j ≤ l} K_s ψ^j (tx − Φ_{s−1}∂tx)`, zero above `n`.
    pub fn phi(&mut self, s: usize, cell: Cell) -> CoverChain {
        if s > self.push.n() {
            return CoverChain::zero();
        }
        if let Some(v) = self.phi_memo.get(&(s, cell)) {
            return v.clone();
        }
        let norm = self.cover().cell_norm(s, cell);
        let out = match self.band(norm) {
            None => CoverChain::zero(),
            Some(l) => {
                let x = CoverChain::cell(cell.0, cell.1);
                let u = match s.checked_sub(1) {
                    Some(p) => {
                        let d = self.cover().boundary(s, &x);
                        x.sub(&self.phi_chain(p, &d))
                    }
                    None => x,
                };
                self.partial_sum_chain(s, &u, l)
            }
        };
        self.phi_memo.insert((s, cell), out.clone());
        out
    }

    /// `Σ_{j ≤ l} K_s ψ^j(tx)`, zero on cells that `ψ` fixes.
    fn partial_sum(&mut self, s: usize, cell: Cell, l: usize) -> CoverChain {
        if self.push.is_fixed(s, cell) {
            return CoverChain::zero();
        }
        if let Some(v) = self.sum_memo.get(&(s, cell, l)) {
            return v.clone();
        }
        let mut out = self.push.k(s, cell);
        if l > 0 {
            let next = self.push.psi(s, cell);
            out.add_assign(&self.partial_sum_chain(s, &next, l - 1));
        }
        self.sum_memo.insert((s, cell, l), out.clone());
        out
    }

    fn partial_sum_chain(&mut self, s: usize, z: &CoverChain, l: usize) -> CoverChain {
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            out.add_scaled(&self.partial_sum(s, *cell, l), c);
        }
        out
    }

    pub fn phi_chain(&mut self, s: usize, z: &CoverChain) -> CoverChain {
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            out.add_scaled(&self.phi(s, *cell), c);
        }
        out
    }

    /// `ζ_s(tx) = tx − ∂Φ_s(tx) − Φ_{s−1}∂(tx)`.
    pub fn zeta(&mut self, s: usize, cell: Cell) -> CoverChain {
        let x = CoverChain::cell(cell.0, cell.1);
        let ph = self.phi(s, cell);
        let mut out = x.sub(&self.cover().boundary(s + 1, &ph));
        if let Some(p) = s.checked_sub(1) {
            let d = self.cover().boundary(s, &x);
            out.sub_assign(&self.phi_chain(p, &d));
        }
        out
    }

    pub fn zeta_chain(&mut self, s: usize, z: &CoverChain) -> CoverChain {
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            out.add_scaled(&self.zeta(s, *cell), c);
        }
        out
    }
}

/// `D_s = {z ∈ C_s : ‖z‖ ≤ radius}` for `s ≤ top`. Its basis is the cells
/// whose support lies in the ball; `a` is the inclusion.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    pub radius: i64,
    pub top: usize,
    index: Vec<BTreeMap<Cell, usize>>,
    pub cells: Vec<Vec<Cell>>,
    /// `∂_D` by columns, `columns[s][j]` for `s ≥ 1`.
    columns: Vec<Vec<Vec<(usize, BigInt)>>>,
    pub complex: BasedFreeComplex,
}

impl FiniteModel {
    pub fn build(cover: &Cover, top: usize, radius: i64) -> Result<Self> {
        let cells: Vec<Vec<Cell>> = (0..=top)
            .map(|s| cover.cells_within(s, radius).filter(|&c| cover.cell_norm(s, c) <= radius).collect())
            .collect();
        let index: Vec<BTreeMap<Cell, usize>> =
            cells.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)).collect()).collect();
        let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        let mut columns = alloc::vec![Vec::new()];
        for s in 1..=top {
            let mut m = Matrix::zero(CoeffRing::Integers, 0, ranks[s - 1], ranks[s]);
            let mut cols = Vec::with_capacity(ranks[s]);
            for (j, &cell) in cells[s].iter().enumerate() {
                let mut col = Vec::new();
                for (face, c) in cover.boundary_cell(s, cell).terms() {
                    let i = *index[s - 1].get(face).ok_or_else(|| {
                        Error::IdentityViolation(format!("face {face:?} of cell {cell:?} leaves the ball"))
                    })?;
                    m.set(i, j, GroupRingElem::constant(CoeffRing::Integers, 0, Scalar::from_integer(c.clone())));
                    col.push((i, c.clone()));
                }
                cols.push(col);
            }
            boundaries.push(m);
            columns.push(cols);
        }
        // faces of ball cells are ball cells, so ∂∂ = 0 is inherited from C
        let complex = BasedFreeComplex::new_unchecked(CoeffRing::Integers, 0, ranks, boundaries);
        Ok(FiniteModel { radius, top, index, cells, columns, complex })
    }

    pub fn rank(&self, s: usize) -> usize {
        self.cells.get(s).map_or(0, Vec::len)
    }

    /// Coordinates of `z ∈ C_s` in the basis of `D_s`, if `z ∈ D_s`.
    pub fn coords(&self, s: usize, z: &CoverChain) -> Option<Vec<BigInt>> {
        let index = self.index.get(s)?;
        let mut out = alloc::vec![BigInt::zero(); self.rank(s)];
        for (cell, c) in z.terms() {
            out[*index.get(cell)?] = c.clone();
        }
        Some(out)
    }

    /// `a`: the chain of `C_s` with the given coordinates.
    pub fn include(&self, s: usize, coords: &[BigInt]) -> CoverChain {
        let mut out = CoverChain::zero();
        for (&(q, j), c) in self.cells[s].iter().zip(coords) {
            out.add_term((q, j), c);
        }
        out
    }

    /// `∂_D` applied to coordinates of `D_s`.
    pub fn boundary_coords(&self, s: usize, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::zero(); self.rank(s.saturating_sub(1))];
        if s == 0 {
            return out;
        }
        for (col, x) in self.columns[s].iter().zip(coords) {
            if x.is_zero() {
                continue;
            }
            for (i, c) in col {
                out[*i] += c * x;
            }
        }
        out
    }
}
