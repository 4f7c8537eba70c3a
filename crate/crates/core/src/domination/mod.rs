//! Finite domination of the infinite cyclic cover, and the total-complex
//! assembly for the converse direction.
//!
//! For a deck-rank-1 complex `C` certified in both directions up to degree
//! `n`, [`finite_type_reduce`] builds a finite free ℤ-complex `D` with chain
//! maps `a : D → C`, `b : C → D` and a homotopy `Φ` with
//! `∂Φ + Φ∂ = 1 − ab` on the cover.

pub mod atlas;
pub mod cover;
pub mod push;
pub mod reduce;
pub mod total;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::certificate::SigmaCertificate;
use crate::complex::BasedFreeComplex;
use crate::decide::build_contraction;
use crate::error::{Error, Result};
use crate::lattice::{Character, LatticePoint};
use crate::ring::{int, Scalar};
use crate::smith::{integer_homology, AbelianGroup};

pub use atlas::{assemble_atlas, Atlas, AtlasEntry};
pub use cover::{Cell, Cover, CoverChain, EquivMap};
pub use push::{check_push, check_reducer, BoundFailure, PushConstants, PushMaps};
pub use reduce::{FiniteModel, Reducer};
pub use total::{
    assemble_with_complex, random_total_input, total_complex_assemble, two_term_resolution, validate_two_term_resolution,
    TotalAssembly, TotalChecks, TotalInput,
};

/// How much of the construction was checked exhaustively.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominationChecks {
    /// Cells are checked at positions `|q| ≤ working_radius`.
    pub working_radius: i64,
    pub push_cells: usize,
    pub reducer_cells: usize,
    pub starstar_cells: usize,
    pub domination_cells: usize,
}

#[derive(Clone, Debug)]
pub struct DominationResult {
    pub n: usize,
    /// The finite complex, over ℤ with trivial deck action.
    pub d: BasedFreeComplex,
    /// Set when `C` has cells above `n`; then `D` stops at degree `n` and
    /// only `H_i(D)` for `i < n` is meaningful.
    pub truncated: bool,
    pub atlas_r: i64,
    pub atlas_m: i64,
    pub atlas_l: i64,
    pub iterations: Vec<(Character, usize)>,
    pub constants: PushConstants,
    pub model: FiniteModel,
    pub reducer: Reducer,
    pub checks: DominationChecks,
}

impl DominationResult {
    /// `b = ζ` on a cell, in the coordinates of `D_s`.
    pub fn b(&mut self, s: usize, cell: Cell) -> Result<Vec<BigInt>> {
        let z = self.reducer.zeta(s, cell);
        self.model
            .coords(s, &z)
            .ok_or_else(|| Error::IdentityViolation(format!("ζ of cell {cell:?} in degree {s} leaves D")))
    }

    /// `a`: a basis element of `D_s`, which is a cell of the cover.
    pub fn a(&self, s: usize, i: usize) -> Cell {
        self.model.cells[s][i]
    }

    /// The homotopy `Φ_s(tx)` with `∂Φ + Φ∂ = 1 − ab`.
    pub fn homotopy(&mut self, s: usize, cell: Cell) -> CoverChain {
        self.reducer.phi(s, cell)
    }

    /// `H_i(D)` in the degrees where it is meaningful.
    pub fn homology(&self) -> Vec<AbelianGroup> {
        let mut h = homology_of(&self.d);
        if self.truncated {
            h.truncate(self.n);
        }
        h
    }

    /// Radius `a + n·m` of the ball defining `D`.
    pub fn radius(&self) -> Scalar {
        &self.constants.a + int(self.n as i64) * &self.constants.m
    }
}

/// Integer homology of a complex with trivial deck action.
pub fn homology_of(d: &BasedFreeComplex) -> Vec<AbelianGroup> {
    let origin = LatticePoint::zero(d.deck_rank());
    let ranks: Vec<usize> = (0..=d.top_degree()).map(|i| d.rank(i)).collect();
    let mats: Vec<Vec<(usize, usize, BigInt)>> = (1..ranks.len())
        .map(|i| d.boundary(i).entries().map(|((r, c), e)| (r, c, e.coeff(&origin).to_integer())).collect())
        .collect();
    integer_homology(&ranks, &mats)
}

fn violation(f: BoundFailure) -> Error {
    Error::IdentityViolation(format!(
        "{} bound fails in degree {} at cell {:?}: {} > {}",
        f.property, f.degree, f.cell, f.value, f.bound
    ))
}

/// Certificates for both directions, then [`finite_type_reduce_with`].
pub fn finite_type_reduce(c: &BasedFreeComplex, n: usize, window: Option<i64>) -> Result<DominationResult> {
    let mut certs = Vec::new();
    for s in [1, -1] {
        let xi = Character::from_ints(&[s])?;
        match build_contraction(c, &xi, n, window) {
            Ok(cert) => certs.push(cert),
            Err(Error::NotInSigma { .. }) => return Err(Error::MissingDirection(xi)),
            Err(e) => return Err(e),
        }
    }
    finite_type_reduce_with(c, n, &certs)
}

/// Builds `D`, `a`, `b` and `Φ` and checks the pushing, reducer and ball
/// bounds together with the domination identities on every cell within a
/// working radius.
pub fn finite_type_reduce_with(c: &BasedFreeComplex, n: usize, certs: &[SigmaCertificate]) -> Result<DominationResult> {
    let atlas = assemble_atlas(c, n, certs)?;
    let cover = Cover::new(c)?;
    let iterations = atlas.entries.iter().map(|e| (e.certificate.xi().clone(), e.iterations)).collect();
    let (atlas_r, atlas_m, atlas_l) = (atlas.r, atlas.m, atlas.l);
    let mut push = PushMaps::new(cover.clone(), atlas);
    let k = push.constants.clone();
    let floor = |x: &Scalar| i64::try_from(x.floor().to_integer()).unwrap_or(i64::MAX);

    let mut checks = DominationChecks::default();
    checks.push_cells = check_push(&mut push, floor(&(&k.a + int(4) * &k.r))).map_err(violation)?;
    for l in 1..=3 {
        for b in [int(0), k.r.clone(), k.m.clone()] {
            checks.reducer_cells += check_reducer(&mut push, l, &b).map_err(violation)?;
        }
    }

    let truncated = c.dim() > n;
    let top = n.min(c.dim());
    let radius_q = &k.a + int(n as i64) * &k.m;
    let model = FiniteModel::build(&cover, top, floor(&radius_q))?;
    let mut reducer = Reducer::new(push);
    let working = floor(&(&radius_q + int(2) * &k.r)) + atlas_l;
    checks.working_radius = working;

    for s in 0..=top {
        let bound = &k.a + int(s as i64) * &k.m;
        let cells: Vec<Cell> = cover.cells_within(s, working).collect();
        for cell in cells {
            let z = reducer.zeta(s, cell);
            let norm = int(cover.norm(s, &z));
            if norm > bound {
                return Err(violation(BoundFailure { property: "ball", degree: s, cell, value: norm, bound }));
            }
            checks.starstar_cells += 1;

            let coords = model
                .coords(s, &z)
                .ok_or_else(|| Error::IdentityViolation(format!("ζ of cell {cell:?} in degree {s} leaves D")))?;
            let ab = model.include(s, &coords);
            let x = CoverChain::cell(cell.0, cell.1);
            let mut lhs = cover.boundary(s + 1, &reducer.phi(s, cell));
            if let Some(p) = s.checked_sub(1) {
                let d = cover.boundary(s, &x);
                lhs.add_assign(&reducer.phi_chain(p, &d));
            }
            if lhs != x.sub(&ab) {
                return Err(Error::IdentityViolation(format!("∂Φ + Φ∂ ≠ 1 − ab at cell {cell:?} in degree {s}")));
            }
            if s >= 1 {
                let d = cover.boundary(s, &x);
                let via_c = reducer.zeta_chain(s - 1, &d);
                let via_c = model
                    .coords(s - 1, &via_c)
                    .ok_or_else(|| Error::IdentityViolation(format!("ζ∂ of cell {cell:?} leaves D")))?;
                if model.boundary_coords(s, &coords) != via_c {
                    return Err(Error::NotAChainMap { degree: s });
                }
            }
            checks.domination_cells += 1;
        }
    }
    for s in 1..=top {
        for (i, &(q, j)) in model.cells[s].iter().enumerate() {
            let mut e = alloc::vec![BigInt::zero(); model.rank(s)];
            e[i] = BigInt::from(1);
            let lhs = cover.boundary(s, &CoverChain::cell(q, j));
            let rhs = model.include(s - 1, &model.boundary_coords(s, &e));
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: s });
            }
        }
    }

    Ok(DominationResult {
        n,
        d: model.complex.clone(),
        truncated,
        atlas_r,
        atlas_m,
        atlas_l,
        iterations,
        constants: k,
        model,
        reducer,
        checks,
    })
}

/// Short human-readable homology listing, e.g. `H0=Z H1=Z^2`.
pub fn describe_homology(h: &[AbelianGroup]) -> String {
    let mut parts = Vec::new();
    for (i, g) in h.iter().enumerate() {
        let mut s = match g.free_rank {
            0 => String::new(),
            1 => String::from("Z"),
            r => format!("Z^{r}"),
        };
        for t in &g.torsion {
            if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&format!("Z/{t}"));
        }
        if s.is_empty() {
            s.push('0');
        }
        parts.push(format!("H{i}={s}"));
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::builtin;
    use crate::ring::CoeffRing;

    fn group(free: usize) -> AbelianGroup {
        AbelianGroup { free_rank: free, torsion: Vec::new() }
    }

    #[test]
    fn circle_dominated_by_an_interval() {
        let c = builtin("circle", CoeffRing::Integers).unwrap();
        let r = finite_type_reduce(&c, 1, None).unwrap();
        assert_eq!(r.homology(), alloc::vec![group(1), group(0)]);
        assert!(!r.truncated);
        assert!(r.checks.domination_cells > 0);
    }

    #[test]
    fn trefoil_dominated_by_alexander_module_rank() {
        let c = builtin("trefoil", CoeffRing::Integers).unwrap();
        let r = finite_type_reduce(&c, 2, None).unwrap();
        assert_eq!(r.homology(), alloc::vec![group(1), group(2), group(0)]);
    }

    #[test]
    fn bs12_fails_at_the_atlas() {
        let c = builtin("bs12", CoeffRing::Integers).unwrap();
        let err = finite_type_reduce(&c, 1, None).unwrap_err();
        assert!(matches!(err, Error::MissingDirection(_)));
    }

    #[test]
    fn describe_lists_every_degree() {
        assert_eq!(describe_homology(&[group(1), group(2), group(0)]), "H0=Z H1=Z^2 H2=0");
    }
}
