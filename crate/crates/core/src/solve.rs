//! Linear systems over the localization S⁻¹Λ, where S is the set of group
//! ring elements whose ξ-lowest part is a unit monomial. Every element of S
//! is invertible in the Novikov completion, so a solution here is a solution
//! there, and a row reduced to `0 = b ≠ 0` is an obstruction there too.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::{Character, LatticePoint};
use crate::laurent;
use crate::matrix::Matrix;
use crate::ring::CoeffRing;

/// `num / den` with a single denominator `den ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracMatrix {
    pub num: Matrix,
    pub den: GroupRingElem,
}

impl FracMatrix {
    pub fn from_matrix(m: Matrix) -> FracMatrix {
        let den = GroupRingElem::one(m.ring(), m.deck_rank());
        FracMatrix { num: m, den }
    }

    pub fn identity(ring: CoeffRing, deck_rank: usize, n: usize) -> FracMatrix {
        FracMatrix::from_matrix(Matrix::identity(ring, deck_rank, n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// `D·Y = R`.
    Solved(FracMatrix),
    /// Column `column` of the right-hand side is not in the image of `D`,
    /// even over the completion.
    Inconsistent { column: usize },
    /// No admissible pivot could be found in column `column` of `D`.
    Stuck { column: usize },
}

/// Divides a row by the largest unit of S⁻¹Λ that is cheap to find: the
/// common monomial factor, plus the polynomial gcd over a field in rank one.
fn normalize_row(row: &mut [GroupRingElem], ring: CoeffRing, rank: usize) {
    let mut low: Option<Vec<i64>> = None;
    for e in row.iter() {
        for g in e.support() {
            low = Some(match low {
                None => g.0.clone(),
                Some(l) => l.iter().zip(&g.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
    }
    let Some(low) = low else { return };
    let shift = -&LatticePoint(low);
    if !shift.is_zero() {
        for e in row.iter_mut() {
            *e = e.shift(&shift);
        }
    }
    if !ring.is_field() {
        return;
    }
    if rank == 1 {
        let mut g = GroupRingElem::zero(ring, 1);
        for e in row.iter() {
            if !e.is_zero() {
                g = laurent::gcd(&g, e).expect("field rank one");
                if laurent::is_unit(&g) {
                    break;
                }
            }
        }
        if !laurent::is_unit(&g) {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    *e = laurent::exact_div(e, &g).expect("field rank one").expect("gcd divides");
                }
            }
        }
        // make the first nonzero entry's top coefficient 1
        if let Some(e) = row.iter().find(|e| !e.is_zero()) {
            let c = ring.inverse(&laurent::lead_coefficient(e)).expect("field");
            for e in row.iter_mut() {
                *e = e.scale(&c);
            }
        }
    } else if let Some(e) = row.iter().find(|e| !e.is_zero()) {
        let c = ring.inverse(e.terms().values().next().expect("nonzero")).expect("field");
        for e in row.iter_mut() {
            *e = e.scale(&c);
        }
    }
}

/// Solves `D·Y = R` over S⁻¹Λ by fraction-free Gauss–Jordan elimination
/// whose pivots all lie in S.
///
/// Pivot preference: smallest ξ-valuation, then fewest terms, then lowest
/// row index, then lowest column index.
pub fn solve_localized(d: &Matrix, r: &FracMatrix, xi: &Character) -> Result<SolveOutcome> {
    if d.rows() != r.num.rows() {
        return Err(Error::DimensionMismatch { expected: d.rows(), found: r.num.rows() });
    }
    let ring = d.ring();
    let rank = d.deck_rank();
    let m = d.rows();
    let n = d.cols();
    let p = r.num.cols();
    let zero = GroupRingElem::zero(ring, rank);
    let mut a: Vec<Vec<GroupRingElem>> = vec![vec![zero.clone(); n + p]; m];
    for ((i, j), e) in d.entries() {
        a[i][j] = e.clone();
    }
    for ((i, j), e) in r.num.entries() {
        a[i][n + j] = e.clone();
    }
    for row in a.iter_mut() {
        normalize_row(row, ring, rank);
    }
    let mut used = vec![false; m];
    let mut pivot_col = vec![false; n];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut best: Option<((i64, usize, usize, usize), usize, usize)> = None;
        for i in (0..m).filter(|&i| !used[i]) {
            for c in (0..n).filter(|&c| !pivot_col[c]) {
                let e = &a[i][c];
                if !e.is_zero() && e.is_novikov_unit(xi) {
                    let key = (e.valuation(xi).unwrap_or(0), e.len(), i, c);
                    if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                        best = Some((key, i, c));
                    }
                }
            }
        }
        let Some((_, piv, c)) = best else { break };
        let u = a[piv][c].clone();
        let prow = a[piv].clone();
        for (q, row) in a.iter_mut().enumerate() {
            if q == piv || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                *x = &(&u * x) - &(&f * y);
            }
            normalize_row(row, ring, rank);
        }
        used[piv] = true;
        pivot_col[c] = true;
        pivots.push((piv, c));
    }
    let mut stuck: Option<usize> = None;
    for i in 0..m {
        if used[i] {
            continue;
        }
        match (0..n).find(|&c| !a[i][c].is_zero()) {
            None => {
                if let Some(j) = (0..p).find(|&j| !a[i][n + j].is_zero()) {
                    return Ok(SolveOutcome::Inconsistent { column: j });
                }
            }
            Some(c) => stuck = Some(stuck.map_or(c, |s: usize| s.min(c))),
        }
    }
    if let Some(c) = stuck {
        return Ok(SolveOutcome::Stuck { column: c });
    }
    // Y'[c] = a[piv][n + j] / u_c, put over a common denominator.
    let units: Vec<GroupRingElem> = pivots.iter().map(|&(i, c)| a[i][c].clone()).collect();
    let common = common_multiple(&units, ring, rank);
    let mut num = Matrix::zero(ring, rank, n, p);
    for (&(i, c), u) in pivots.iter().zip(&units) {
        let scale = divide(&common, u, ring, rank);
        for j in 0..p {
            if !a[i][n + j].is_zero() {
                num.set(c, j, &scale * &a[i][n + j]);
            }
        }
    }
    let den = &common * &r.den;
    Ok(SolveOutcome::Solved(reduce_fraction(FracMatrix { num, den })))
}

/// A common multiple of elements of S: the lcm over a field in rank one,
/// the product of distinct factors otherwise.
fn common_multiple(units: &[GroupRingElem], ring: CoeffRing, rank: usize) -> GroupRingElem {
    let mut acc = GroupRingElem::one(ring, rank);
    let mut seen: Vec<&GroupRingElem> = Vec::new();
    for u in units {
        if ring.is_field() && rank == 1 {
            let g = laurent::gcd(&acc, u).expect("field rank one");
            let part = laurent::exact_div(u, &g).expect("field rank one").expect("gcd divides");
            acc = &acc * &part;
        } else if !seen.contains(&u) {
            seen.push(u);
            acc = &acc * u;
        }
    }
    acc
}

/// `a / b` for `b` known to divide `a`.
fn divide(a: &GroupRingElem, b: &GroupRingElem, ring: CoeffRing, rank: usize) -> GroupRingElem {
    if ring.is_field() && rank == 1 {
        return laurent::exact_div(a, b).expect("field rank one").expect("divides");
    }
    exact_quotient(a, b).expect("divides")
}

/// Exact division in R[ℤ^r] by repeated cancellation of the ξ-independent
/// lexicographically largest term.
pub fn exact_quotient(a: &GroupRingElem, b: &GroupRingElem) -> Option<GroupRingElem> {
    if b.is_zero() {
        return None;
    }
    let ring = a.ring();
    let (bg, bc) = b.terms().iter().next_back()?;
    let binv = ring.inverse(bc);
    let mut rem = a.clone();
    let mut q = GroupRingElem::zero(ring, a.rank());
    // The quotient's support lies in a box whose widths are the differences
    // of the widths of a and b, which bounds the number of steps.
    let mut steps: u64 = 1;
    for i in 0..a.rank() {
        let wa = width(a, i);
        let wb = width(b, i);
        if !a.is_zero() && wa < wb {
            return None;
        }
        steps = steps.saturating_mul((wa - wb + 1).max(1) as u64);
    }
    for _ in 0..=steps {
        let Some((rg, rc)) = rem.terms().iter().next_back() else {
            return Some(q);
        };
        let c = match &binv {
            Some(inv) => ring.reduce(rc * inv),
            None => {
                let c = rc / bc;
                if !c.is_integer() {
                    return None;
                }
                c
            }
        };
        let g = rg - bg;
        let m = GroupRingElem::monomial(ring, g, c);
        rem = &rem - &(&m * b);
        q = &q + &m;
    }
    None
}

fn width(x: &GroupRingElem, i: usize) -> i64 {
    let lo = x.support().map(|g| g.0[i]).min().unwrap_or(0);
    let hi = x.support().map(|g| g.0[i]).max().unwrap_or(0);
    hi - lo
}

/// Cancels a common factor of numerator entries and denominator where this
/// is cheap (field coefficients in rank one, monomials otherwise).
pub fn reduce_fraction(f: FracMatrix) -> FracMatrix {
    let ring = f.den.ring();
    let rank = f.den.rank();
    if ring.is_field() && rank == 1 {
        let mut g = f.den.clone();
        for (_, e) in f.num.entries() {
            g = laurent::gcd(&g, e).expect("field rank one");
            if laurent::is_unit(&g) {
                break;
            }
        }
        let g = if f.num.is_zero() { f.den.clone() } else { g };
        let num = f.num.map(|e| laurent::exact_div(e, &g).unwrap().unwrap());
        let den = laurent::exact_div(&f.den, &g).unwrap().unwrap();
        return normalize_den(FracMatrix { num, den });
    }
    normalize_den(f)
}

/// Scales so that the denominator's ξ-independent data is canonical: its
/// lowest exponent vector is zero and, over a field, its top coefficient is 1.
fn normalize_den(f: FracMatrix) -> FracMatrix {
    let ring = f.den.ring();
    let Some((g, _)) = f.den.terms().iter().next() else { return f };
    let shift = -g;
    let mut num = f.num.shift(&shift);
    let mut den = f.den.shift(&shift);
    if ring.is_field() {
        let (_, c) = den.terms().iter().next_back().expect("nonzero");
        let inv = ring.inverse(c).expect("field");
        num = num.scale(&GroupRingElem::constant(ring, den.rank(), inv.clone()));
        den = den.scale(&inv);
    } else if let Some((_, c)) = den.terms().iter().next_back() {
        if c < &num_traits::Zero::zero() {
            let m1 = GroupRingElem::constant(ring, den.rank(), crate::ring::int(-1));
            num = num.scale(&m1);
            den = &den * &m1;
        }
    }
    FracMatrix { num, den }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use crate::ring::CoeffRing::*;

    fn xi(v: i64) -> Character {
        Character::from_ints(&[v]).unwrap()
    }

    #[test]
    fn circle_inverse() {
        let d = Matrix::from_rows(Integers, 1, vec![vec![poly(Integers, &[(1, 1), (0, -1)])]]);
        let r = FracMatrix::identity(Integers, 1, 1);
        match solve_localized(&d, &r, &xi(1)).unwrap() {
            SolveOutcome::Solved(y) => {
                let lhs = d.mul(&y.num).unwrap();
                assert_eq!(lhs, Matrix::scalar(&y.den, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_unit_pivot_is_stuck_over_z_but_not_over_q() {
        let d = Matrix::from_rows(Integers, 1, vec![vec![poly(Integers, &[(1, 1), (0, -2)])]]);
        let r = FracMatrix::identity(Integers, 1, 1);
        assert_eq!(solve_localized(&d, &r, &xi(1)).unwrap(), SolveOutcome::Stuck { column: 0 });
        assert!(matches!(solve_localized(&d, &r, &xi(-1)).unwrap(), SolveOutcome::Solved(_)));
        let dq = d.map_coefficients(Rationals).unwrap();
        let rq = FracMatrix::identity(Rationals, 1, 1);
        assert!(matches!(solve_localized(&dq, &rq, &xi(1)).unwrap(), SolveOutcome::Solved(_)));
    }

    #[test]
    fn zero_map_is_inconsistent() {
        let d = Matrix::zero(Rationals, 1, 1, 1);
        let r = FracMatrix::identity(Rationals, 1, 1);
        assert_eq!(solve_localized(&d, &r, &xi(1)).unwrap(), SolveOutcome::Inconsistent { column: 0 });
    }

    #[test]
    fn exact_quotient_in_rank_two() {
        let a = GroupRingElem::from_terms(Integers, 2, [
            (LatticePoint::new(vec![1, 0]), crate::ring::int(1)),
            (LatticePoint::new(vec![0, 1]), crate::ring::int(-1)),
        ]).unwrap();
        let b = GroupRingElem::from_terms(Integers, 2, [
            (LatticePoint::new(vec![2, 0]), crate::ring::int(3)),
            (LatticePoint::new(vec![0, 0]), crate::ring::int(1)),
        ]).unwrap();
        let p = &a * &b;
        assert_eq!(exact_quotient(&p, &b), Some(a.clone()));
        assert_eq!(exact_quotient(&a, &b), None);
    }
}
