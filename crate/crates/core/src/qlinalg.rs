//! Dense linear algebra over ℚ and 𝔽_p for specialized complexes.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::ring::{CoeffRing, Scalar};

/// Row-major dense matrix over a field coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub field: CoeffRing,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl DenseMatrix {
    pub fn zero(field: CoeffRing, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let f = self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a.data[i][c].is_zero()) else { continue };
            a.data.swap(r, p);
            let inv = f.inverse(&a.data[r][c]).expect("field");
            for x in a.data[r].iter_mut() {
                *x = f.reduce(&*x * &inv);
            }
            let prow = a.data[r].clone();
            for i in 0..a.rows {
                if i != r && !a.data[i][c].is_zero() {
                    let factor = a.data[i][c].clone();
                    for (x, y) in a.data[i].iter_mut().zip(&prow) {
                        *x = f.reduce(&*x - &factor * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|row| self.field.reduce(row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)))
            .collect()
    }

    /// Basis of the kernel.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.field.reduce(-r.data[row][free].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// The matrix with `v` appended as a column.
    pub fn with_column(&self, v: &[Scalar]) -> DenseMatrix {
        let mut m = self.clone();
        for (row, x) in m.data.iter_mut().zip(v) {
            row.push(x.clone());
        }
        m.cols += 1;
        m
    }

    pub fn in_column_space(&self, v: &[Scalar]) -> bool {
        self.with_column(v).rank() == self.rank()
    }
}

/// A cycle of `dn` (kernel vector) outside the column space of `up`.
pub fn cycle_outside_image(dn: &DenseMatrix, up: &DenseMatrix) -> Option<Vec<Scalar>> {
    dn.nullspace().into_iter().find(|z| !up.in_column_space(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn kernel_and_image() {
        let f = CoeffRing::Rationals;
        let dn = DenseMatrix { field: f, rows: 1, cols: 2, data: vec![vec![int(0), int(1)]] };
        let up = DenseMatrix::zero(f, 2, 1);
        assert_eq!(cycle_outside_image(&dn, &up), Some(vec![int(1), int(0)]));
        let up2 = DenseMatrix { field: f, rows: 2, cols: 1, data: vec![vec![int(3)], vec![int(0)]] };
        assert_eq!(cycle_outside_image(&dn, &up2), None);
    }
}
