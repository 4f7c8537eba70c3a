//! Algebraic mapping tori of self-maps of complexes over the coefficient ring.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::ChainMap;
use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::LatticePoint;
use crate::matrix::Matrix;
use crate::ring::int;

/// Lifts a matrix over `R` (deck rank 0) to `R[t^±1]`.
fn induce(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let mut out = Matrix::zero(ring, 1, m.rows(), m.cols());
    for ((i, j), e) in m.entries() {
        let c = e.coeff(&LatticePoint::zero(0));
        out.set(i, j, GroupRingElem::constant(ring, 1, c));
    }
    out
}

/// `D_k = Λ⊗C_k ⊕ Λ⊗C_{k−1}` with `∂(x, y) = (∂x + (−1)^{k−1}(t − f)y, ∂y)`.
///
/// `cx` must have deck rank 0 (a complex over the coefficient ring) and `f`
/// must be a chain self-map of it.
pub fn mapping_torus(cx: &BasedFreeComplex, f: &ChainMap) -> Result<BasedFreeComplex> {
    if cx.deck_rank() != 0 {
        return Err(Error::RankUnsupported { deck_rank: cx.deck_rank() });
    }
    if let Some(degree) = f.first_non_commuting(cx, cx)? {
        return Err(Error::NotAChainMap { degree });
    }
    let ring = cx.ring();
    let n = cx.dim();
    let t = GroupRingElem::monomial(ring, LatticePoint::t(1), int(1));
    let ranks: Vec<usize> = (0..=n + 1).map(|k| cx.rank(k) + if k > 0 { cx.rank(k - 1) } else { 0 }).collect();
    let mut boundaries = Vec::new();
    for k in 1..=n + 1 {
        let mut d = Matrix::zero(ring, 1, ranks[k - 1], ranks[k]);
        // x-block: ∂_k on C_k, y-block: ±(t − f_{k−1}) and ∂_{k−1}
        d.put_block(0, 0, &induce(&cx.boundary(k)));
        let twist = Matrix::scalar(&t, cx.rank(k - 1)).sub(&induce(&f.maps[k - 1]))?;
        let twist = if k % 2 == 1 { twist } else { twist.neg() };
        d.put_block(0, cx.rank(k), &twist);
        if k >= 2 {
            d.put_block(cx.rank(k - 1), cx.rank(k), &induce(&cx.boundary(k - 1)));
        }
        boundaries.push(d);
    }
    let labels: Vec<Vec<String>> = (0..=n + 1)
        .map(|k| {
            let mut l: Vec<String> = (0..cx.rank(k)).map(|i| format!("x{k}.{i}")).collect();
            if k > 0 {
                l.extend((0..cx.rank(k - 1)).map(|i| format!("y{}.{i}", k - 1)));
            }
            l
        })
        .collect();
    Ok(BasedFreeComplex::new(ring, 1, ranks, boundaries)?.with_labels(labels))
}

/// A complex over the coefficient ring given by integer matrices
/// (`d[i-1] = ∂_i`, rows of integers).
pub fn integer_complex(ring: crate::ring::CoeffRing, ranks: Vec<usize>, d: &[Vec<Vec<i64>>]) -> Result<BasedFreeComplex> {
    let boundaries = d
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let mut m = Matrix::zero(ring, 0, ranks[k], ranks[k + 1]);
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(i, j, GroupRingElem::constant(ring, 0, ring.canonical(int(v))?));
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    BasedFreeComplex::new(ring, 0, ranks, boundaries)
}

/// A chain self-map over the coefficient ring from integer matrices.
pub fn integer_map(ring: crate::ring::CoeffRing, maps: &[Vec<Vec<i64>>]) -> Result<ChainMap> {
    let maps = maps
        .iter()
        .map(|rows| {
            let n = rows.len();
            let mut m = Matrix::zero(ring, 0, n, rows.first().map_or(0, Vec::len));
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(i, j, GroupRingElem::constant(ring, 0, ring.canonical(int(v))?));
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap { maps })
}

/// The cellular circle `Z --0--> Z` with its degree-`d` self-map.
pub fn circle_with_degree(ring: crate::ring::CoeffRing, d: i64) -> Result<(BasedFreeComplex, ChainMap)> {
    let c = integer_complex(ring, vec![1, 1], &[vec![vec![0]]])?;
    let f = integer_map(ring, &[vec![vec![1]], vec![vec![d]]])?;
    Ok((c, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::Integers;

    #[test]
    fn point_identity_gives_circle() {
        let pt = integer_complex(Integers, vec![1], &[]).unwrap();
        let id = integer_map(Integers, &[vec![vec![1]]]).unwrap();
        let c = mapping_torus(&pt, &id).unwrap();
        assert_eq!(c.ranks(), &[1, 1]);
        assert_eq!(c.boundary(1).get(0, 0), poly(Integers, &[(1, 1), (0, -1)]));
    }

    #[test]
    fn degree_two_circle_map() {
        let (c, f) = circle_with_degree(Integers, 2).unwrap();
        let m = mapping_torus(&c, &f).unwrap();
        assert_eq!(m.ranks(), &[1, 2, 1]);
        assert_eq!(m.boundary(1).get(0, 1), poly(Integers, &[(1, 1), (0, -1)]));
        assert_eq!(m.boundary(2).get(0, 0), poly(Integers, &[(1, -1), (0, 2)]));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let c = integer_complex(Integers, vec![1, 1], &[vec![vec![1]]]).unwrap();
        let f = integer_map(Integers, &[vec![vec![1]], vec![vec![2]]]).unwrap();
        assert_eq!(mapping_torus(&c, &f), Err(Error::NotAChainMap { degree: 1 }));
    }
}
