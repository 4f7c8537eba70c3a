//! Total complex of a resolution tensored with a chain complex.
//!
//! Given a resolution `E`, a complex `C` and for every `p` a complex
//! `P_{p,•}` with chain maps `f : P_{p,•} → E_p ⊗ C`, `g` back and a homotopy
//! `∂L + L∂ = fg − 1`, the maps
//!
//! ```text
//! F^k = (L d)^k f : P_{p,q} → E_{p−k} ⊗ C_{q+k}
//! K^i = g d F^{i−1} : P_{p,q} → P_{p−i, q−1+i},   K^0 = ∂
//! ```
//!
//! assemble into a complex `TP` with `δ = Σ (−1)^p K^s` and a chain map
//! `F = Σ (−1)^k F^k` into `TE`, the total complex of `E ⊗ C` with
//! `δ = (−1)^p (∂ + d)`. Every identity is checked exactly.
//!
//! The basis of `E_p ⊗ C_q` is ordered so that `e_a ⊗ c_b` has index
//! `a · rank(C_q) + b`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::builders::random::{random_elem, RandomShape, Source};
use crate::chain::{ChainHomotopy, ChainMap};
use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct TotalInput {
    pub e: BasedFreeComplex,
    pub c: BasedFreeComplex,
    /// `P_{p,•}` for `p = 0..=dim E`.
    pub p: Vec<BasedFreeComplex>,
    /// `f_p : P_{p,•} → E_p ⊗ C`.
    pub f: Vec<ChainMap>,
    /// `g_p : E_p ⊗ C → P_{p,•}`.
    pub g: Vec<ChainMap>,
    /// `L_p` on `E_p ⊗ C` with `∂L + L∂ = fg − 1`.
    pub l: Vec<ChainHomotopy>,
}

/// Counts of the exact identity checks that passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TotalChecks {
    /// `∂F^m + (−1)^{m+1} F^m ∂ = Σ_{k<m} (−1)^k F^k K^{m−k} − d F^{m−1}`, including `m = 0`.
    pub chain_f: usize,
    /// `Σ_s (−1)^s K^{m−s} K^s = 0`.
    pub sum_zero: usize,
}

#[derive(Clone, Debug)]
pub struct TotalAssembly {
    pub tp: BasedFreeComplex,
    pub te: BasedFreeComplex,
    /// `F : TP → TE`.
    pub f: ChainMap,
    pub checks: TotalChecks,
}

/// `I_n ⊗ m`.
fn kron_left(n: usize, m: &Matrix) -> Matrix {
    let mut out = Matrix::zero(m.ring(), m.deck_rank(), n * m.rows(), n * m.cols());
    for a in 0..n {
        out.put_block(a * m.rows(), a * m.cols(), m);
    }
    out
}

/// `m ⊗ I_n`.
fn kron_right(m: &Matrix, n: usize) -> Matrix {
    let mut out = Matrix::zero(m.ring(), m.deck_rank(), m.rows() * n, m.cols() * n);
    for ((i, j), x) in m.entries() {
        for b in 0..n {
            out.set(i * n + b, j * n + b, x.clone());
        }
    }
    out
}

/// `E_p ⊗ C` with boundary `1 ⊗ ∂`.
pub fn tensor_row(e: &BasedFreeComplex, c: &BasedFreeComplex, p: usize) -> BasedFreeComplex {
    let ranks = (0..=c.top_degree()).map(|q| e.rank(p) * c.rank(q)).collect();
    let boundaries = (1..=c.top_degree()).map(|q| kron_left(e.rank(p), &c.boundary(q))).collect();
    BasedFreeComplex::new_unchecked(c.ring(), c.deck_rank(), ranks, boundaries)
}

/// Checks that `E` is `Λ → Λ` with boundary `u·t^k(t − 1)` for a unit `u`,
/// which makes it a resolution of the trivial module over `ℤ[t^{±1}]`.
pub fn validate_two_term_resolution(e: &BasedFreeComplex) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidComplex(format!("not a two-term resolution: {why}")));
    if e.deck_rank() != 1 {
        return bad("deck rank must be 1");
    }
    if e.ranks() != [1, 1] {
        return bad("ranks must be [1, 1]");
    }
    let d = e.boundary(1).get(0, 0);
    let terms: Vec<_> = d.terms().iter().collect();
    match terms.as_slice() {
        [(lo, a), (hi, b)] if hi.exponents()[0] == lo.exponents()[0] + 1 && **a == -(*b).clone() => {
            if e.ring().is_unit(b) {
                Ok(())
            } else {
                bad("leading coefficient is not a unit")
            }
        }
        _ => bad("boundary is not a unit multiple of t^k(t − 1)"),
    }
}

/// Validates `E` as the two-term resolution, then [`assemble_with_complex`].
pub fn total_complex_assemble(input: &TotalInput) -> Result<TotalAssembly> {
    validate_two_term_resolution(&input.e)?;
    assemble_with_complex(input)
}

/// The assembly for any finite free complex `E` with `dd = 0`; none of the
/// identities uses exactness of `E`.
pub fn assemble_with_complex(input: &TotalInput) -> Result<TotalAssembly> {
    let mut a = Assembler::new(input)?;
    let checks = a.check_identities()?;
    let (tp, te, f) = a.totals()?;
    Ok(TotalAssembly { tp, te, f, checks })
}

struct Assembler<'a> {
    input: &'a TotalInput,
    f_memo: BTreeMap<(i64, i64, i64), Matrix>,
}

impl<'a> Assembler<'a> {
    fn new(input: &'a TotalInput) -> Result<Self> {
        let (e, c) = (&input.e, &input.c);
        e.validate().map_err(|v| Error::InvalidComplex(format!("{v:?}")))?;
        c.validate().map_err(|v| Error::InvalidComplex(format!("{v:?}")))?;
        if e.ring() != c.ring() || e.deck_rank() != c.deck_rank() {
            return Err(Error::RingMismatch);
        }
        let rows = e.top_degree() + 1;
        for (name, len) in [("P", input.p.len()), ("f", input.f.len()), ("g", input.g.len()), ("L", input.l.len())] {
            if len != rows {
                return Err(Error::InvalidComplex(format!("{name} has {len} rows, E has {rows} degrees")));
            }
        }
        let a = Assembler { input, f_memo: BTreeMap::new() };
        for p in 0..rows {
            let x = tensor_row(e, c, p);
            let pp = &input.p[p];
            pp.validate().map_err(|v| Error::InvalidComplex(format!("P_{p}: {v:?}")))?;
            if let Some(q) = input.f[p].first_non_commuting(pp, &x)? {
                return Err(Error::IdentityViolation(format!("f is not a chain map at p = {p}, q = {q}")));
            }
            if let Some(q) = input.g[p].first_non_commuting(&x, pp)? {
                return Err(Error::IdentityViolation(format!("g is not a chain map at p = {p}, q = {q}")));
            }
            let (pi, top) = (p as i64, x.top_degree().max(pp.top_degree()) as i64);
            for q in 0..=top {
                let lhs = a.d_c(pi, q + 1).mul(&a.l(pi, q))?.add(&a.l(pi, q - 1).mul(&a.d_c(pi, q))?)?;
                let fg = a.f0(pi, q).mul(&a.g(pi, q))?;
                let rhs = fg.sub(&Matrix::identity(c.ring(), c.deck_rank(), a.ec(pi, q)))?;
                if lhs != rhs {
                    return Err(Error::IdentityViolation(format!("∂L + L∂ ≠ fg − 1 at p = {p}, q = {q}")));
                }
            }
        }
        Ok(a)
    }

    fn zero(&self, rows: usize, cols: usize) -> Matrix {
        Matrix::zero(self.input.c.ring(), self.input.c.deck_rank(), rows, cols)
    }

    fn p_max(&self) -> i64 {
        self.input.e.top_degree() as i64
    }

    fn q_max(&self) -> i64 {
        let p = self.input.p.iter().map(|x| x.top_degree()).max().unwrap_or(0);
        p.max(self.input.c.top_degree()) as i64
    }

    fn ec(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.input.e.rank(p as usize) * self.input.c.rank(q as usize)
    }

    fn pr(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 || p > self.p_max() {
            return 0;
        }
        self.input.p[p as usize].rank(q as usize)
    }

    /// `1 ⊗ ∂ : E_p ⊗ C_q → E_p ⊗ C_{q−1}`.
    fn d_c(&self, p: i64, q: i64) -> Matrix {
        if p < 0 || q <= 0 {
            return self.zero(self.ec(p, q - 1), self.ec(p, q));
        }
        kron_left(self.input.e.rank(p as usize), &self.input.c.boundary(q as usize))
    }

    /// `d ⊗ 1 : E_p ⊗ C_q → E_{p−1} ⊗ C_q`.
    fn d_e(&self, p: i64, q: i64) -> Matrix {
        if p <= 0 || q < 0 {
            return self.zero(self.ec(p - 1, q), self.ec(p, q));
        }
        kron_right(&self.input.e.boundary(p as usize), self.input.c.rank(q as usize))
    }

    /// `∂ : P_{p,q} → P_{p,q−1}`.
    fn d_p(&self, p: i64, q: i64) -> Matrix {
        if p < 0 || p > self.p_max() || q <= 0 {
            return self.zero(self.pr(p, q - 1), self.pr(p, q));
        }
        self.input.p[p as usize].boundary(q as usize)
    }

    fn pick(&self, maps: &[Matrix], q: i64, rows: usize, cols: usize) -> Matrix {
        match usize::try_from(q).ok().and_then(|q| maps.get(q)) {
            Some(m) if m.rows() == rows && m.cols() == cols => m.clone(),
            _ => self.zero(rows, cols),
        }
    }

    fn f0(&self, p: i64, q: i64) -> Matrix {
        self.pick(&self.input.f[p as usize].maps, q, self.ec(p, q), self.pr(p, q))
    }

    fn g(&self, p: i64, q: i64) -> Matrix {
        if p < 0 || p > self.p_max() {
            return self.zero(self.pr(p, q), self.ec(p, q));
        }
        self.pick(&self.input.g[p as usize].maps, q, self.pr(p, q), self.ec(p, q))
    }

    fn l(&self, p: i64, q: i64) -> Matrix {
        if p < 0 || p > self.p_max() {
            return self.zero(self.ec(p, q + 1), self.ec(p, q));
        }
        self.pick(&self.input.l[p as usize].maps, q, self.ec(p, q + 1), self.ec(p, q))
    }

    /// `F^k : P_{p,q} → E_{p−k} ⊗ C_{q+k}`.
    fn big_f(&mut self, k: i64, p: i64, q: i64) -> Result<Matrix> {
        if k > p || q < 0 || p < 0 {
            return Ok(self.zero(self.ec(p - k, q + k), self.pr(p, q)));
        }
        if let Some(m) = self.f_memo.get(&(k, p, q)) {
            return Ok(m.clone());
        }
        let m = if k == 0 {
            self.f0(p, q)
        } else {
            let prev = self.big_f(k - 1, p, q)?;
            self.l(p - k, q + k - 1).mul(&self.d_e(p - k + 1, q + k - 1).mul(&prev)?)?
        };
        self.f_memo.insert((k, p, q), m.clone());
        Ok(m)
    }

    /// `K^i : P_{p,q} → P_{p−i, q−1+i}`.
    fn big_k(&mut self, i: i64, p: i64, q: i64) -> Result<Matrix> {
        if i == 0 {
            return Ok(self.d_p(p, q));
        }
        if i > p || q < 0 {
            return Ok(self.zero(self.pr(p - i, q - 1 + i), self.pr(p, q)));
        }
        let f = self.big_f(i - 1, p, q)?;
        self.g(p - i, q + i - 1).mul(&self.d_e(p - i + 1, q + i - 1).mul(&f)?)
    }

    fn check_identities(&mut self) -> Result<TotalChecks> {
        let mut checks = TotalChecks::default();
        for p in 0..=self.p_max() {
            for q in 0..=self.q_max() + 1 {
                for m in 0..=p {
                    self.check_chain_f(m, p, q)?;
                    checks.chain_f += 1;
                    self.check_sum_zero(m, p, q)?;
                    checks.sum_zero += 1;
                }
            }
        }
        Ok(checks)
    }

    fn check_chain_f(&mut self, m: i64, p: i64, q: i64) -> Result<()> {
        let fm = self.big_f(m, p, q)?;
        let mut lhs = self.d_c(p - m, q + m).mul(&fm)?;
        let back = self.big_f(m, p, q - 1)?.mul(&self.d_p(p, q))?;
        let mut rhs = if m == 0 {
            back
        } else {
            lhs = if m % 2 == 1 { lhs.add(&back)? } else { lhs.sub(&back)? };
            let mut acc = self.d_e(p - m + 1, q + m - 1).mul(&self.big_f(m - 1, p, q)?)?.neg();
            for k in 0..m {
                let term = self.big_f(k, p - (m - k), q + m - k - 1)?.mul(&self.big_k(m - k, p, q)?)?;
                acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            acc
        };
        if lhs != rhs {
            rhs = rhs.sub(&lhs)?;
            let (i, j, _) = rhs.first_nonzero().expect("difference is nonzero");
            return Err(Error::IdentityViolation(format!(
                "∂F^m identity fails at p = {p}, q = {q}, m = {m} (entry {i},{j})"
            )));
        }
        Ok(())
    }

    fn check_sum_zero(&mut self, m: i64, p: i64, q: i64) -> Result<()> {
        let mut acc = self.zero(self.pr(p - m, q - 2 + m), self.pr(p, q));
        for s in 0..=m {
            if q - 1 + s < 0 {
                continue;
            }
            let term = self.big_k(m - s, p - s, q - 1 + s)?.mul(&self.big_k(s, p, q)?)?;
            acc = if s % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        if !acc.is_zero() {
            return Err(Error::IdentityViolation(format!("Σ(−1)^s K^(m−s) K^s ≠ 0 at p = {p}, q = {q}, m = {m}")));
        }
        Ok(())
    }

    fn offsets(&self, k: i64, rank: impl Fn(i64, i64) -> usize) -> (BTreeMap<i64, usize>, usize) {
        let mut out = BTreeMap::new();
        let mut total = 0;
        for p in 0..=self.p_max().min(k) {
            out.insert(p, total);
            total += rank(p, k - p);
        }
        (out, total)
    }

    fn totals(&mut self) -> Result<(BasedFreeComplex, BasedFreeComplex, ChainMap)> {
        let top = self.p_max() + self.q_max();
        let sign = |p: i64| if p % 2 == 0 { 1 } else { -1 };
        let tp_off: Vec<_> = (0..=top).map(|k| self.offsets(k, |p, q| self.pr(p, q))).collect();
        let te_off: Vec<_> = (0..=top).map(|k| self.offsets(k, |p, q| self.ec(p, q))).collect();

        let mut tp_d = Vec::new();
        let mut te_d = Vec::new();
        for k in 1..=top {
            let ku = k as usize;
            let mut dp = self.zero(tp_off[ku - 1].1, tp_off[ku].1);
            let mut de = self.zero(te_off[ku - 1].1, te_off[ku].1);
            for p in 0..=self.p_max().min(k) {
                let q = k - p;
                let col = tp_off[ku].0[&p];
                for s in 0..=p {
                    if q - 1 + s < 0 {
                        continue;
                    }
                    let block = self.big_k(s, p, q)?;
                    let row = tp_off[ku - 1].0[&(p - s)];
                    dp.put_block(row, col, &if sign(p) > 0 { block } else { block.neg() });
                }
                let col = te_off[ku].0[&p];
                let mut put = |tp: i64, block: Matrix| {
                    let row = te_off[ku - 1].0[&tp];
                    de.put_block(row, col, &if sign(p) > 0 { block } else { block.neg() });
                };
                if q >= 1 {
                    put(p, self.d_c(p, q));
                }
                if p >= 1 {
                    put(p - 1, self.d_e(p, q));
                }
            }
            tp_d.push(dp);
            te_d.push(de);
        }
        let (ring, deck) = (self.input.c.ring(), self.input.c.deck_rank());
        let tp = BasedFreeComplex::new(ring, deck, tp_off.iter().map(|x| x.1).collect(), tp_d)
            .map_err(|e| Error::IdentityViolation(format!("δδ ≠ 0 on TP: {e}")))?;
        let te = BasedFreeComplex::new(ring, deck, te_off.iter().map(|x| x.1).collect(), te_d)
            .map_err(|e| Error::IdentityViolation(format!("δδ ≠ 0 on TE: {e}")))?;

        let mut maps = Vec::new();
        for k in 0..=top {
            let ku = k as usize;
            let mut m = self.zero(te_off[ku].1, tp_off[ku].1);
            for p in 0..=self.p_max().min(k) {
                let q = k - p;
                for j in 0..=p {
                    let block = self.big_f(j, p, q)?;
                    m.put_block(te_off[ku].0[&(p - j)], tp_off[ku].0[&p], &if j % 2 == 0 { block } else { block.neg() });
                }
            }
            maps.push(m);
        }
        let f = ChainMap { maps };
        if let Some(k) = f.first_non_commuting(&tp, &te)? {
            return Err(Error::NotAChainMap { degree: k });
        }
        Ok((tp, te, f))
    }
}

/// `1 + c·E_ij` applied `count` times with random `i ≠ j`, with its inverse.
fn random_automorphism(src: &mut impl Source, n: usize, shape: &RandomShape, ring_one: &GroupRingElem) -> (Matrix, Matrix) {
    let (ring, deck) = (ring_one.ring(), ring_one.rank());
    let mut u = Matrix::identity(ring, deck, n);
    let mut v = Matrix::identity(ring, deck, n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..src.range(0, 2) {
        let i = src.below(n as u64) as usize;
        let j = (i + 1 + src.below(n as u64 - 1) as usize) % n;
        let c = random_elem(src, ring, shape);
        let mut step = Matrix::identity(ring, deck, n);
        step.set(i, j, c.clone());
        let mut back = Matrix::identity(ring, deck, n);
        back.set(i, j, -c);
        u = step.mul(&u).expect("square");
        v = v.mul(&back).expect("square");
    }
    (u, v)
}

fn random_sparse(src: &mut impl Source, rows: usize, cols: usize, shape: &RandomShape, ring_one: &GroupRingElem) -> Matrix {
    let mut m = Matrix::zero(ring_one.ring(), ring_one.rank(), rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if src.below(3) == 0 {
                m.set(i, j, random_elem(src, ring_one.ring(), shape));
            }
        }
    }
    m
}

/// A random valid input over `E` and `C`: each `P_{p,•}` is `E_p ⊗ C` in a
/// disguised basis, and `f`, `g` are perturbed by null-homotopic maps, so
/// `fg ≠ 1` and `L ≠ 0` in general.
pub fn random_total_input(src: &mut impl Source, e: &BasedFreeComplex, c: &BasedFreeComplex, shape: &RandomShape) -> TotalInput {
    let one = GroupRingElem::one(c.ring(), c.deck_rank());
    let mm = |a: &Matrix, b: &Matrix| a.mul(b).expect("shapes agree");
    let add = |a: &Matrix, b: &Matrix| a.add(b).expect("shapes agree");
    let mut input = TotalInput { e: e.clone(), c: c.clone(), p: Vec::new(), f: Vec::new(), g: Vec::new(), l: Vec::new() };
    for p in 0..=e.top_degree() {
        let x = tensor_row(e, c, p);
        let top = x.top_degree();
        let zero = |r: usize, k: usize| Matrix::zero(c.ring(), c.deck_rank(), r, k);
        let (u, v): (Vec<Matrix>, Vec<Matrix>) = (0..=top).map(|q| random_automorphism(src, x.rank(q), shape, &one)).unzip();
        // P's boundary is U ∂ U⁻¹; f0 = U⁻¹, g0 = U
        let dp: Vec<Matrix> = (1..=top).map(|q| mm(&mm(&u[q - 1], &x.boundary(q)), &v[q])).collect();
        let pp = BasedFreeComplex::new_unchecked(c.ring(), c.deck_rank(), x.ranks().to_vec(), dp);
        let sigma: Vec<Matrix> = (0..=top).map(|q| random_sparse(src, x.rank(q + 1), x.rank(q), shape, &one)).collect();
        let rho: Vec<Matrix> = (0..=top).map(|q| random_sparse(src, x.rank(q + 1), x.rank(q), shape, &one)).collect();
        let sig = |q: isize| if q < 0 { zero(x.rank(0), 0) } else { sigma[q as usize].clone() };
        let rh = |q: isize| if q < 0 { zero(x.rank(0), 0) } else { rho[q as usize].clone() };

        let mut f = Vec::new();
        let mut g = Vec::new();
        let mut l = Vec::new();
        for q in 0..=top {
            let qi = q as isize;
            // f = f0 + ∂σ + σ∂, g = g0 + ∂ρ + ρ∂
            let fq = add(&add(&v[q], &mm(&x.boundary(q + 1), &sig(qi))), &mm(&sig(qi - 1), &pp.boundary(q)));
            let b = add(&mm(&pp.boundary(q + 1), &rh(qi)), &mm(&rh(qi - 1), &x.boundary(q)));
            let gq = add(&u[q], &b);
            // L = f0ρ + σg0 + σB
            let f0_next = if q < top { v[q + 1].clone() } else { zero(0, 0) };
            let lq = add(&add(&mm(&f0_next, &rh(qi)), &mm(&sig(qi), &u[q])), &mm(&sig(qi), &b));
            f.push(fq);
            g.push(gq);
            l.push(lq);
        }
        input.p.push(pp);
        input.f.push(ChainMap { maps: f });
        input.g.push(ChainMap { maps: g });
        input.l.push(ChainHomotopy { maps: l });
    }
    input
}

/// `Λ --(t − 1)--> Λ` over `ℤ[t^{±1}]` or another coefficient ring.
pub fn two_term_resolution(ring: crate::ring::CoeffRing) -> BasedFreeComplex {
    let d = GroupRingElem::laurent(ring, 0, &[-1, 1]);
    BasedFreeComplex::new_unchecked(ring, 1, alloc::vec![1, 1], alloc::vec![Matrix::scalar(&d, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::random::random_complex;
    use crate::ring::CoeffRing;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn source(seed: u64) -> impl FnMut(u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        move |n| rng.gen_range(0..n)
    }

    #[test]
    fn two_term_instances_assemble() {
        let e = two_term_resolution(CoeffRing::Integers);
        let shape = RandomShape::small(1);
        let mut nontrivial = 0;
        for seed in 0..100 {
            let mut src = source(seed);
            let c = random_complex(&mut src, CoeffRing::Integers, &shape);
            let input = random_total_input(&mut src, &e, &c, &shape);
            let out = total_complex_assemble(&input).unwrap_or_else(|err| panic!("seed {seed}: {err}"));
            assert!(out.checks.sum_zero > 0);
            if input.l.iter().any(|l| l.maps.iter().any(|m| !m.is_zero())) {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 50, "only {nontrivial} instances have L ≠ 0");
    }

    #[test]
    fn longer_complexes_exercise_higher_m() {
        let shape = RandomShape { max_rank: 2, ..RandomShape::small(1) };
        for seed in 0..20 {
            let mut src = source(1000 + seed);
            let e = random_complex(&mut src, CoeffRing::Integers, &shape);
            let c = random_complex(&mut src, CoeffRing::Integers, &shape);
            let input = random_total_input(&mut src, &e, &c, &shape);
            assemble_with_complex(&input).unwrap_or_else(|err| panic!("seed {seed}: {err}"));
        }
    }

    #[test]
    fn tampered_resolution_is_rejected() {
        let d = GroupRingElem::laurent(CoeffRing::Integers, 0, &[-2, 1]);
        let e = BasedFreeComplex::new_unchecked(CoeffRing::Integers, 1, alloc::vec![1, 1], alloc::vec![Matrix::scalar(&d, 1)]);
        assert!(validate_two_term_resolution(&e).is_err());
        let shifted = GroupRingElem::laurent(CoeffRing::Integers, 3, &[1, -1]);
        let e = BasedFreeComplex::new_unchecked(CoeffRing::Integers, 1, alloc::vec![1, 1], alloc::vec![Matrix::scalar(&shifted, 1)]);
        assert!(validate_two_term_resolution(&e).is_ok());
    }

    #[test]
    fn broken_homotopy_is_reported() {
        let e = two_term_resolution(CoeffRing::Integers);
        let c = crate::builders::builtin("circle", CoeffRing::Integers).unwrap();
        let mut src = source(5);
        let mut input = random_total_input(&mut src, &e, &c, &RandomShape::small(1));
        let x = input.l[0].maps[0].clone();
        let one = GroupRingElem::one(CoeffRing::Integers, 1);
        input.l[0].maps[0] = x.add(&Matrix::scalar(&one, 1).block(0, 0, x.rows(), x.cols())).unwrap();
        assert!(matches!(total_complex_assemble(&input), Err(Error::IdentityViolation(_))));
    }
}
