//! The inward-pushing chain map `ψ ≃ 1` built cell by cell from an atlas.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::domination::atlas::Atlas;
use crate::domination::cover::{Cell, Cover, CoverChain};
use crate::ring::{int, Scalar};

/// Cut-off radius and the constants `ψ` satisfies on cells of degree `≤ n`:
/// `ψ(tx) = tx` when `‖tx‖ ≤ a`, otherwise `‖ψ(tx)‖ ≤ ‖tx‖ − r`, and
/// `‖K(tx)‖ ≤ ‖tx‖ + m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushConstants {
    pub r: Scalar,
    pub m: Scalar,
    pub a: Scalar,
    /// Radius of the support neighbourhood that must stay on one side.
    pub l_prime: Scalar,
}

impl PushConstants {
    pub fn from_atlas(atlas: &Atlas) -> Self {
        let n = int(atlas.n as i64);
        let (r, m, l) = (int(atlas.r), int(atlas.m), int(atlas.l));
        let three_halves = Scalar::new(3.into(), 2.into());
        let first = Scalar::new(3.into(), 4.into()) * &r + &l * &l / &r;
        let second = &l * &l / &m;
        let l_prime = first.max(second) + (int(2) * &n + int(1)) * &l;
        // on a line, a point farther out than l' keeps its l'-neighbourhood
        // on its own side of the origin
        let a = int(2) * &l_prime;
        PushConstants {
            r: &r / int(2) - &three_halves * &n * &m,
            m: three_halves * m * (n + int(1)),
            a,
            l_prime,
        }
    }
}

pub(crate) fn le(norm: i64, bound: &Scalar) -> bool {
    &int(norm) <= bound
}

/// `K` and `ψ` evaluated lazily with memoisation; `k(s, ·)` maps
/// `C_s → C_{s+1}` and `∂K + K∂ = 1 − ψ` in degrees `≤ n`.
#[derive(Clone, Debug)]
pub struct PushMaps {
    pub cover: Cover,
    pub atlas: Atlas,
    pub constants: PushConstants,
    k_memo: BTreeMap<(usize, Cell), CoverChain>,
    psi_memo: BTreeMap<(usize, Cell), CoverChain>,
}

impl PushMaps {
    pub fn new(cover: Cover, atlas: Atlas) -> Self {
        let constants = PushConstants::from_atlas(&atlas);
        PushMaps { cover, atlas, constants, k_memo: BTreeMap::new(), psi_memo: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.atlas.n
    }

    fn far(&self, s: usize, cell: Cell) -> Option<i64> {
        let (lo, hi) = self.cover.cell_span(s, cell);
        let q = if hi.abs() >= lo.abs() { hi } else { lo };
        if le(q.abs(), &self.constants.a) {
            None
        } else {
            Some(q)
        }
    }

    pub fn k(&mut self, s: usize, cell: Cell) -> CoverChain {
        if s > self.n() {
            return CoverChain::zero();
        }
        if let Some(v) = self.k_memo.get(&(s, cell)) {
            return v.clone();
        }
        let out = match self.far(s, cell) {
            None => CoverChain::zero(),
            Some(q) => {
                let x = CoverChain::cell(cell.0, cell.1);
                let lower = match s.checked_sub(1) {
                    Some(p) => {
                        let d = self.cover.boundary(s, &x);
                        self.k_chain(p, &d)
                    }
                    None => CoverChain::zero(),
                };
                let h = self.atlas.entry_for(q).homotopy(s);
                h.apply(&x.sub(&lower))
            }
        };
        self.k_memo.insert((s, cell), out.clone());
        out
    }

    pub fn psi(&mut self, s: usize, cell: Cell) -> CoverChain {
        if let Some(v) = self.psi_memo.get(&(s, cell)) {
            return v.clone();
        }
        let x = CoverChain::cell(cell.0, cell.1);
        let out = if s > self.n() {
            // K vanishes above n, so ψ = 1 − K∂ there
            let d = self.cover.boundary(s, &x);
            let kd = self.k_chain(s - 1, &d);
            x.sub(&kd)
        } else {
            match self.far(s, cell) {
                None => x,
                Some(q) => {
                    let (mut out, d) = match s.checked_sub(1) {
                        Some(p) => {
                            let d = self.cover.boundary(s, &x);
                            let kd = self.k_chain(p, &d);
                            let pd = self.psi_chain(p, &d);
                            (x.sub(&kd), Some((p, pd)))
                        }
                        None => (x, None),
                    };
                    let entry = self.atlas.entry_for(q);
                    out = entry.phi(s).apply(&out);
                    if let Some((p, pd)) = d {
                        out.add_assign(&entry.homotopy(p).apply(&pd));
                    }
                    out
                }
            }
        };
        self.psi_memo.insert((s, cell), out.clone());
        out
    }

    pub fn k_chain(&mut self, s: usize, z: &CoverChain) -> CoverChain {
        for cell in z.terms().keys() {
            if !self.k_memo.contains_key(&(s, *cell)) {
                self.k(s, *cell);
            }
        }
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            if let Some(v) = self.k_memo.get(&(s, *cell)) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    pub fn psi_chain(&mut self, s: usize, z: &CoverChain) -> CoverChain {
        for cell in z.terms().keys() {
            if !self.psi_memo.contains_key(&(s, *cell)) {
                self.psi(s, *cell);
            }
        }
        let mut out = CoverChain::zero();
        for (cell, c) in z.terms() {
            out.add_scaled(&self.psi_memo[&(s, *cell)], c);
        }
        out
    }

    /// Whether `ψ` and `K` act trivially on the cell.
    pub fn is_fixed(&self, s: usize, cell: Cell) -> bool {
        s <= self.n() && self.far(s, cell).is_none()
    }

    pub fn psi_power(&mut self, s: usize, z: &CoverChain, l: usize) -> CoverChain {
        let mut cur = z.clone();
        for _ in 0..l {
            cur = self.psi_chain(s, &cur);
        }
        cur
    }

    /// `(∂K + K∂ + ψ − 1)(tx)`; zero when the homotopy identity holds.
    pub fn defect(&mut self, s: usize, cell: Cell) -> CoverChain {
        let x = CoverChain::cell(cell.0, cell.1);
        let kx = self.k(s, cell);
        let mut out = self.cover.boundary(s + 1, &kx);
        if let Some(p) = s.checked_sub(1) {
            let d = self.cover.boundary(s, &x);
            out.add_assign(&self.k_chain(p, &d));
        }
        out.add_assign(&self.psi(s, cell));
        out.sub_assign(&x);
        out
    }
}

/// A failed bound, with the cell and the two sides of the inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFailure {
    pub property: &'static str,
    pub degree: usize,
    pub cell: Cell,
    pub value: Scalar,
    pub bound: Scalar,
}

/// Exhaustive check of the pushing properties on all cells of degree `≤ n`
/// at positions `|q| ≤ radius`. Returns the number of cells checked.
pub fn check_push(p: &mut PushMaps, radius: i64) -> core::result::Result<usize, BoundFailure> {
    let mut count = 0;
    for s in 0..=p.n() {
        let cells: Vec<Cell> = p.cover.cells_within(s, radius).collect();
        for cell in cells {
            count += 1;
            let norm = p.cover.cell_norm(s, cell);
            let fail = |property, value: Scalar, bound: Scalar| BoundFailure { property, degree: s, cell, value, bound };
            let defect = p.defect(s, cell);
            if !defect.is_zero() {
                return Err(fail("homotopy", int(0), int(0)));
            }
            let psi = p.psi(s, cell);
            let psi_norm = int(p.cover.norm(s, &psi));
            if le(norm, &p.constants.a) {
                if psi != CoverChain::cell(cell.0, cell.1) {
                    return Err(fail("fixed inside the cut-off", psi_norm, int(norm)));
                }
            } else {
                let bound = int(norm) - &p.constants.r;
                if psi_norm > bound {
                    return Err(fail("push", psi_norm, bound));
                }
            }
            let k = p.k(s, cell);
            let k_norm = int(p.cover.norm(s + 1, &k));
            let bound = int(norm) + &p.constants.m;
            if k_norm > bound {
                return Err(fail("homotopy growth", k_norm, bound));
            }
        }
    }
    Ok(count)
}

/// Checks `‖ψ^l(tx)‖ ≤ a + b` for every cell with `‖tx‖ ≤ a + l·r + b`.
pub fn check_reducer(p: &mut PushMaps, l: usize, b: &Scalar) -> core::result::Result<usize, BoundFailure> {
    let reach = &p.constants.a + int(l as i64) * &p.constants.r + b;
    let radius = reach.floor().to_integer();
    let radius = i64::try_from(radius).unwrap_or(i64::MAX);
    let bound = &p.constants.a + b;
    let mut count = 0;
    for s in 0..=p.n() {
        let cells: Vec<Cell> = p.cover.cells_within(s, radius).collect();
        for cell in cells {
            if !le(p.cover.cell_norm(s, cell), &reach) {
                continue;
            }
            count += 1;
            let x = CoverChain::cell(cell.0, cell.1);
            let image = p.psi_power(s, &x, l);
            let norm = int(p.cover.norm(s, &image));
            if norm > bound {
                return Err(BoundFailure { property: "reducer", degree: s, cell, value: norm, bound: bound.clone() });
            }
        }
    }
    Ok(count)
}
