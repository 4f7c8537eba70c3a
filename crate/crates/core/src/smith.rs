//! Smith normal forms over F[t, t⁻¹] and over ℤ, and the homology they give.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::laurent;
use crate::matrix::Matrix;

/// A finitely generated module over the Laurent PID: `Λ^free ⊕ ⊕ Λ/(d_i)`,
/// with `d_1 | d_2 | …` monic non-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentModule {
    pub free_rank: usize,
    pub torsion: Vec<GroupRingElem>,
}

impl LaurentModule {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }
}

fn dense(m: &Matrix) -> Vec<Vec<GroupRingElem>> {
    let mut d = vec![vec![GroupRingElem::zero(m.ring(), m.deck_rank()); m.cols()]; m.rows()];
    for ((i, j), e) in m.entries() {
        d[i][j] = e.clone();
    }
    d
}

/// Diagonal of the Smith form of a rank-one matrix over a field, each entry
/// normalized (monic, no power of t), in divisibility order.
pub fn laurent_smith_diagonal(m: &Matrix) -> Result<Vec<GroupRingElem>> {
    if m.deck_rank() != 1 {
        return Err(Error::RankUnsupported { deck_rank: m.deck_rank() });
    }
    if !m.ring().is_field() {
        return Err(Error::RingUnsupported("Smith form over the Laurent ring needs a field".into()));
    }
    let mut a = dense(m);
    let rows = m.rows();
    let cols = m.cols();
    let mut diag = Vec::new();
    for s in 0..rows.min(cols) {
        loop {
            // smallest span pivot in the trailing block
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(s) {
                for (j, e) in row.iter().enumerate().skip(s) {
                    if !e.is_zero() {
                        let sp = laurent::span(e);
                        if best.is_none_or(|(b, _, _)| sp < b) {
                            best = Some((sp, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Ok(finish(diag));
            };
            a.swap(s, pi);
            for row in a.iter_mut() {
                row.swap(s, pj);
            }
            let mut clean = true;
            for i in s + 1..rows {
                if a[i][s].is_zero() {
                    continue;
                }
                let (q, r) = laurent::div_rem(&a[i][s], &a[s][s])?;
                for j in s..cols {
                    let t = &q * &a[s][j];
                    a[i][j] = &a[i][j] - &t;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in s + 1..cols {
                if a[s][j].is_zero() {
                    continue;
                }
                let (q, r) = laurent::div_rem(&a[s][j], &a[s][s])?;
                for row in a.iter_mut().skip(s) {
                    let t = &row[s] * &q;
                    row[j] = &row[j] - &t;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut bad_row = None;
            'outer: for (i, row) in a.iter().enumerate().skip(s + 1) {
                for e in row.iter().skip(s + 1) {
                    if !e.is_zero() && laurent::exact_div(e, &a[s][s])?.is_none() {
                        bad_row = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    for j in s..cols {
                        let t = a[i][j].clone();
                        a[s][j] = &a[s][j] + &t;
                    }
                }
                None => break,
            }
        }
        diag.push(laurent::normalize(&a[s][s]));
    }
    Ok(finish(diag))
}

fn finish(mut diag: Vec<GroupRingElem>) -> Vec<GroupRingElem> {
    diag.retain(|d| !d.is_zero());
    diag.sort_by_key(laurent::span);
    diag
}

/// Homology of a rank-one complex over a field as Laurent modules, degrees
/// `0..=dim`.
pub fn homology_lambda(c: &BasedFreeComplex) -> Result<Vec<LaurentModule>> {
    if c.deck_rank() != 1 {
        return Err(Error::RankUnsupported { deck_rank: c.deck_rank() });
    }
    if !c.ring().is_field() {
        return Err(Error::RingUnsupported("homology over the Laurent ring needs field coefficients".into()));
    }
    let diags: Vec<Vec<GroupRingElem>> = (0..=c.dim() + 1).map(|i| laurent_smith_diagonal(&c.boundary(i))).collect::<Result<_>>()?;
    Ok((0..=c.dim())
        .map(|i| {
            let out_rank = diags[i].len();
            let in_diag = &diags[i + 1];
            LaurentModule {
                free_rank: c.rank(i) - out_rank - in_diag.len(),
                torsion: in_diag.iter().filter(|d| !laurent::is_unit(d)).cloned().collect(),
            }
        })
        .collect())
}

/// A finitely generated abelian group `ℤ^free ⊕ ⊕ ℤ/d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Smith diagonal (nonzero entries, positive, divisibility order) of an
/// integer matrix given densely by rows.
pub fn integer_smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut s = 0;
    while s < rows.min(cols) {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(s) {
            for (j, e) in row.iter().enumerate().skip(s) {
                if !e.is_zero() && best.as_ref().is_none_or(|(b, _, _)| e.abs() < *b) {
                    best = Some((e.abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(s, pi);
        for row in a.iter_mut() {
            row.swap(s, pj);
        }
        let p = a[s][s].clone();
        let mut clean = true;
        for i in s + 1..rows {
            if a[i][s].is_zero() {
                continue;
            }
            let q = a[i][s].div_floor(&p);
            for j in s..cols {
                let t = &q * &a[s][j];
                a[i][j] -= t;
            }
            if !a[i][s].is_zero() {
                clean = false;
            }
        }
        for j in s + 1..cols {
            if a[s][j].is_zero() {
                continue;
            }
            let q = a[s][j].div_floor(&p);
            for row in a.iter_mut().skip(s) {
                let t = &row[s] * &q;
                row[j] -= t;
            }
            if !a[s][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let bad = (s + 1..rows).find(|&i| a[i].iter().skip(s + 1).any(|e| !e.is_multiple_of(&p)));
        if let Some(i) = bad {
            for j in s..cols {
                let t = a[i][j].clone();
                a[s][j] += t;
            }
            continue;
        }
        diag.push(p.abs());
        s += 1;
    }
    diag
}

/// Integer homology from integer boundary matrices, `d[i-1] = ∂_i` given as
/// sparse `(row, col, value)` lists. Unit pivots are eliminated sparsely
/// before the dense Smith form.
pub fn integer_homology(ranks: &[usize], d: &[Vec<(usize, usize, BigInt)>]) -> Vec<AbelianGroup> {
    let n = ranks.len();
    let mut ranks_of_d = vec![0usize; n + 1];
    let mut diags: Vec<Vec<BigInt>> = vec![Vec::new(); n + 1];
    for i in 1..n {
        let (r, dg) = sparse_rank_and_diag(ranks[i - 1], ranks[i], &d[i - 1]);
        ranks_of_d[i] = r;
        diags[i] = dg;
    }
    (0..n)
        .map(|i| AbelianGroup {
            free_rank: ranks[i] - ranks_of_d[i] - ranks_of_d[i + 1],
            torsion: diags[i + 1].iter().filter(|x| !x.is_one()).cloned().collect(),
        })
        .collect()
}

/// Rank and Smith diagonal of a sparse integer matrix.
fn sparse_rank_and_diag(rows: usize, cols: usize, entries: &[(usize, usize, BigInt)]) -> (usize, Vec<BigInt>) {
    use alloc::collections::{BTreeMap, BTreeSet};
    let mut row_map: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, j, v) in entries {
        if !v.is_zero() {
            *row_map[*i].entry(*j).or_insert_with(BigInt::zero) += v;
            col_rows[*j].insert(*i);
        }
    }
    let mut alive_rows: BTreeSet<usize> = (0..rows).collect();
    let mut alive_cols: BTreeSet<usize> = (0..cols).collect();
    let mut units = 0usize;
    loop {
        // find a ±1 entry with the smallest row to keep fill-in low
        let mut pick = None;
        for &i in &alive_rows {
            if let Some((j, _)) = row_map[i].iter().find(|(_, v)| v.abs().is_one()) {
                let weight = row_map[i].len() * col_rows[*j].len();
                if pick.is_none_or(|(w, _, _)| weight < w) {
                    pick = Some((weight, i, *j));
                }
            }
        }
        let Some((_, p, c)) = pick else { break };
        let prow = row_map[p].clone();
        let pv = prow[&c].clone();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
        for r in others {
            let f = &row_map[r][&c] * &pv; // pv = ±1, so f / pv = f * pv
            for (j, v) in &prow {
                let e = row_map[r].entry(*j).or_insert_with(BigInt::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row_map[r].remove(j);
                    col_rows[*j].remove(&r);
                } else {
                    col_rows[*j].insert(r);
                }
            }
        }
        // column operations clear the rest of the pivot row
        for j in prow.keys() {
            col_rows[*j].remove(&p);
        }
        row_map[p].clear();
        alive_rows.remove(&p);
        alive_cols.remove(&c);
        units += 1;
    }
    let rlist: Vec<usize> = alive_rows.iter().copied().filter(|&i| !row_map[i].is_empty()).collect();
    let clist: Vec<usize> = alive_cols.iter().copied().collect();
    let cidx: BTreeMap<usize, usize> = clist.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<BigInt>> = rlist
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); clist.len()];
            for (j, v) in &row_map[i] {
                row[cidx[j]] = v.clone();
            }
            row
        })
        .collect();
    let rest = integer_smith_diagonal(dense, clist.len());
    let mut diag = vec![BigInt::one(); units];
    diag.extend(rest);
    (diag.len(), diag)
}

/// A ℤ-basis of the kernel of an integer matrix given by dense columns,
/// found by unimodular column operations.
pub fn integer_kernel(rows: usize, columns: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = columns.len();
    let mut a: Vec<Vec<BigInt>> = columns.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    for r in 0..rows {
        loop {
            let live: Vec<usize> = active.iter().copied().filter(|&c| !a[c][r].is_zero()).collect();
            let Some(&p) = live.iter().min_by_key(|&&c| a[c][r].abs()) else { break };
            if live.len() == 1 {
                active.retain(|&c| c != p);
                break;
            }
            for &o in &live {
                if o == p {
                    continue;
                }
                let q = a[o][r].div_floor(&a[p][r]);
                let (ap, up) = (a[p].clone(), u[p].clone());
                for (x, y) in a[o].iter_mut().zip(&ap) {
                    *x -= &q * y;
                }
                for (x, y) in u[o].iter_mut().zip(&up) {
                    *x -= &q * y;
                }
            }
        }
    }
    active.into_iter().map(|c| u[c].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::Rationals;

    #[test]
    fn integer_smith_of_small_matrix() {
        let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
        assert_eq!(integer_smith_diagonal(m, 2), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn circle_homology() {
        let d = Matrix::from_rows(Rationals, 1, vec![vec![poly(Rationals, &[(1, 1), (0, -1)])]]);
        let c = BasedFreeComplex::new(Rationals, 1, vec![1, 1], vec![d]).unwrap();
        let h = homology_lambda(&c).unwrap();
        assert_eq!(h[0].torsion, vec![poly(Rationals, &[(1, 1), (0, -1)])]);
        assert!(h[1].is_zero());
    }

    #[test]
    fn integer_homology_of_rp2_cells() {
        // 0 <- Z <-0- Z <-2- Z
        let h = integer_homology(&[1, 1, 1], &[vec![], vec![(0, 0, BigInt::from(2))]]);
        assert_eq!(h[0], AbelianGroup { free_rank: 1, torsion: vec![] });
        assert_eq!(h[1], AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2)] });
        assert_eq!(h[2].free_rank, 0);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x − 2y = 0 has kernel spanned by (1, 1), not (2, 2)
        let cols = vec![vec![BigInt::from(2)], vec![BigInt::from(-2)], vec![BigInt::from(0)]];
        let k = integer_kernel(1, &cols);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&cols).map(|(x, c)| x * &c[0]).sum();
            assert!(dot.is_zero());
        }
        let det = &k[0][0] * &k[1][2] - &k[0][2] * &k[1][0];
        assert!(det.abs().is_one());
    }
}
