//! Valuations on based free complexes extending a character.

use alloc::vec::Vec;

use crate::complex::BasedFreeComplex;
use crate::group_ring::GroupRingElem;
use crate::lattice::Character;
use crate::matrix::Matrix;

/// Basis values per degree; extended to chains by the min rule
/// `v(Σ λ_j e_j) = min_j v_ξ(λ_j) + v(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub xi: Character,
    pub values: Vec<Vec<i64>>,
}

impl Valuation {
    /// Degree 0 basis elements get 0; higher ones get 0 if they are cycles
    /// and `v(∂x)` otherwise.
    pub fn standard(c: &BasedFreeComplex, xi: &Character) -> Valuation {
        let mut values: Vec<Vec<i64>> = Vec::with_capacity(c.dim() + 1);
        values.push(alloc::vec![0; c.rank(0)]);
        for i in 1..=c.dim() {
            let d = c.boundary(i);
            let vals = (0..c.rank(i))
                .map(|j| column_value(xi, &values[i - 1], &d, j).unwrap_or(0))
                .collect::<Vec<_>>();
            values.push(vals);
        }
        Valuation { xi: xi.clone(), values }
    }

    pub fn basis(&self, degree: usize, j: usize) -> i64 {
        self.values[degree][j]
    }

    /// Value of a chain in `degree`, `None` for the zero chain.
    pub fn chain(&self, degree: usize, x: &[GroupRingElem]) -> Option<i64> {
        x.iter()
            .enumerate()
            .filter_map(|(j, e)| e.valuation(&self.xi).map(|v| v + self.values[degree][j]))
            .min()
    }

    /// Value of column `col` of `m`, viewed as a chain in `degree`.
    pub fn column(&self, degree: usize, m: &Matrix, col: usize) -> Option<i64> {
        column_value(&self.xi, &self.values[degree], m, col)
    }

    /// First basis element with `v(∂x) < v(x)`, as `(degree, index)`.
    pub fn boundary_axiom_violation(&self, c: &BasedFreeComplex) -> Option<(usize, usize)> {
        for i in 1..=c.dim() {
            let d = c.boundary(i);
            for j in 0..c.rank(i) {
                if let Some(v) = self.column(i - 1, &d, j) {
                    if v < self.values[i][j] {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }
}

fn column_value(xi: &Character, basis: &[i64], m: &Matrix, col: usize) -> Option<i64> {
    m.column(col).into_iter().filter_map(|(row, e)| e.valuation(xi).map(|v| v + basis[row])).min()
}
