//! Random based free complexes for fuzzing.
//!
//! A complex is assembled from elementary pieces `Λ --a--> Λ` and free
//! generators, then disguised by elementary basis changes in every degree,
//! so `∂∂ = 0` holds by construction.

use alloc::vec::Vec;

use crate::complex::BasedFreeComplex;
use crate::group_ring::GroupRingElem;
use crate::lattice::LatticePoint;
use crate::matrix::Matrix;
use crate::ring::{int, CoeffRing};

/// A source of uniform integers; `below(n)` returns a value in `0..n`.
pub trait Source {
    fn below(&mut self, n: u64) -> u64;

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

impl<F: FnMut(u64) -> u64> Source for F {
    fn below(&mut self, n: u64) -> u64 {
        self(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomShape {
    pub deck_rank: usize,
    pub max_rank: usize,
    pub max_degree: usize,
    /// Exponents are drawn from `lowest..=highest` in every coordinate.
    pub lowest: i64,
    pub highest: i64,
    pub max_coeff: i64,
    pub max_terms: usize,
}

impl RandomShape {
    pub fn small(deck_rank: usize) -> Self {
        RandomShape { deck_rank, max_rank: 3, max_degree: 3, lowest: -1, highest: 2, max_coeff: 2, max_terms: 3 }
    }
}

pub fn random_elem(src: &mut impl Source, ring: CoeffRing, shape: &RandomShape) -> GroupRingElem {
    loop {
        let mut e = GroupRingElem::zero(ring, shape.deck_rank);
        for _ in 0..src.range(1, shape.max_terms as i64) {
            let g = LatticePoint((0..shape.deck_rank).map(|_| src.range(shape.lowest, shape.highest)).collect());
            let c = src.range(-shape.max_coeff, shape.max_coeff);
            if let Ok(c) = ring.canonical(int(c)) {
                e.add_term(g, c);
            }
        }
        if !e.is_zero() {
            return e;
        }
    }
}

fn row_add(m: &mut Matrix, i: usize, j: usize, c: &GroupRingElem) {
    let row: Vec<(usize, GroupRingElem)> =
        m.entries().filter(|((r, _), _)| *r == j).map(|((_, k), e)| (k, c * e)).collect();
    for (k, e) in row {
        m.add_to(i, k, &e);
    }
}

fn col_sub(m: &mut Matrix, j: usize, i: usize, c: &GroupRingElem) {
    let col: Vec<(usize, GroupRingElem)> = m.column(i).into_iter().map(|(k, e)| (k, -(c * e))).collect();
    for (k, e) in col {
        m.add_to(k, j, &e);
    }
}

/// A random valid complex with ranks in `1..=max_rank` and top degree in
/// `1..=max_degree`.
pub fn random_complex(src: &mut impl Source, ring: CoeffRing, shape: &RandomShape) -> BasedFreeComplex {
    let top = src.range(1, shape.max_degree as i64) as usize;
    let ranks: Vec<usize> = (0..=top).map(|_| src.range(1, shape.max_rank as i64) as usize).collect();
    let mut used: Vec<Vec<bool>> = ranks.iter().map(|&r| alloc::vec![false; r]).collect();
    let mut d: Vec<Matrix> = (1..=top).map(|q| Matrix::zero(ring, shape.deck_rank, ranks[q - 1], ranks[q])).collect();
    for q in 1..=top {
        let sources: Vec<usize> = (0..ranks[q]).filter(|&j| !used[q][j]).collect();
        let targets: Vec<usize> = (0..ranks[q - 1]).filter(|&i| !used[q - 1][i]).collect();
        let k = src.range(0, sources.len().min(targets.len()) as i64) as usize;
        for (&j, &i) in sources.iter().zip(&targets).take(k) {
            used[q][j] = true;
            used[q - 1][i] = true;
            d[q - 1].set(i, j, random_elem(src, ring, shape));
        }
    }
    for q in 0..=top {
        if ranks[q] < 2 {
            continue;
        }
        for _ in 0..src.range(0, 2) {
            let i = src.below(ranks[q] as u64) as usize;
            let j = (i + 1 + src.below(ranks[q] as u64 - 1) as usize) % ranks[q];
            let c = random_elem(src, ring, shape);
            // U = 1 + c·E_ij on C_q: ∂_q ← ∂_q U⁻¹, ∂_{q+1} ← U ∂_{q+1}
            if q >= 1 {
                col_sub(&mut d[q - 1], j, i, &c);
            }
            if q < top {
                row_add(&mut d[q], i, j, &c);
            }
        }
    }
    BasedFreeComplex::new_unchecked(ring, shape.deck_rank, ranks, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut src = |n: u64| rng.gen_range(0..n);
        for deck in 1..=2 {
            for _ in 0..40 {
                let c = random_complex(&mut src, CoeffRing::Integers, &RandomShape::small(deck));
                assert!(c.validate().is_ok());
                assert!(c.ranks().iter().all(|&r| (1..=3).contains(&r)));
            }
        }
    }
}
