//! Covering the direction sphere of a deck-rank-1 complex by certificates.
//!
//! The sphere is `{+1, −1}`. The certificate for `ξ` raises `v_ξ`, so it
//! moves cells in direction `ξ`; it is therefore used on cells lying on the
//! `−ξ` side of the origin, where it pushes them inward.

use alloc::vec::Vec;

use crate::certificate::{verify_certificate, SigmaCertificate};
use crate::complex::BasedFreeComplex;
use crate::domination::cover::{Cover, CoverChain, EquivMap};
use crate::error::{Error, Result};
use crate::lattice::Character;
use crate::matrix::Matrix;
use crate::ring::CoeffRing;

/// Largest iteration count tried before giving up on `r > 3Mn`.
pub const MAX_ITERATIONS: usize = 256;

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    /// `+1` or `−1`: the direction whose valuation the map raises.
    pub sign: i64,
    /// The certificate after iteration.
    pub certificate: SigmaCertificate,
    pub iterations: usize,
    phi: Vec<EquivMap>,
    homotopy: Vec<EquivMap>,
}

impl AtlasEntry {
    /// Sign of the positions this entry is used on.
    pub fn region(&self) -> i64 {
        -self.sign
    }

    pub fn phi(&self, s: usize) -> &EquivMap {
        &self.phi[s]
    }

    /// `H_s : C_s → C_{s+1}` with `∂H + H∂ = 1 − φ`.
    pub fn homotopy(&self, s: usize) -> &EquivMap {
        &self.homotopy[s]
    }
}

/// Certificates covering both directions, with constants measured on the
/// basis cells of degree `≤ n`: every map raises the valuation of its
/// direction by at least `r`, the homotopies lower it by at most `m`, and
/// all supports stay within distance `l`.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub n: usize,
    pub entries: Vec<AtlasEntry>,
    pub r: i64,
    pub m: i64,
    pub l: i64,
}

impl Atlas {
    /// The entry used for a cell whose outermost position is `q ≠ 0`.
    pub fn entry_for(&self, q: i64) -> &AtlasEntry {
        let region = q.signum();
        self.entries.iter().find(|e| e.region() == region).expect("atlas covers both sides")
    }
}

fn degree_map(maps: &[Matrix], s: usize, c: &BasedFreeComplex, shift: usize) -> Result<EquivMap> {
    match maps.get(s) {
        Some(m) => EquivMap::from_matrix(m),
        None => EquivMap::from_matrix(&Matrix::zero(c.ring(), 1, c.rank(s + shift), c.rank(s))),
    }
}

fn build_entry(c: &BasedFreeComplex, n: usize, cert: &SigmaCertificate, iterations: usize) -> Result<AtlasEntry> {
    let it = if iterations == 1 { cert.clone() } else { cert.iterate(iterations)? };
    let sign = it.xi().coeffs()[0].signum();
    let phi = (0..=n).map(|s| degree_map(&it.map().maps, s, c, 0)).collect::<Result<_>>()?;
    let homotopy = (0..=n).map(|s| degree_map(&it.homotopy().maps, s, c, 1)).collect::<Result<_>>()?;
    Ok(AtlasEntry { sign, certificate: it, iterations, phi, homotopy })
}

struct Measured {
    r: Option<i64>,
    m: i64,
    l: i64,
}

fn measure(cover: &Cover, n: usize, e: &AtlasEntry) -> Measured {
    let mut out = Measured { r: None, m: 0, l: 0 };
    for s in 0..=n {
        for j in 0..cover.rank(s) {
            let x = CoverChain::cell(0, j);
            let fx = e.phi(s).apply(&x);
            let hx = e.homotopy(s).apply(&x);
            let vx = cover.valuation(s, &x, e.sign).expect("basis cell is nonzero");
            if let Some(v) = cover.valuation(s, &fx, e.sign) {
                out.r = Some(out.r.map_or(v - vx, |r| r.min(v - vx)));
            }
            if let Some(v) = cover.valuation(s + 1, &hx, e.sign) {
                out.m = out.m.max(vx - v);
            }
            out.l = out.l.max(cover.diam(s, &x, s, &x)).max(cover.diam(s, &x, s, &fx)).max(cover.diam(s, &x, s + 1, &hx));
        }
    }
    out
}

/// Picks one verified certificate per direction and iterates each the
/// fewest times giving `r > 3Mn`; fewer iterations keep `l` small.
pub fn assemble_atlas(c: &BasedFreeComplex, n: usize, certificates: &[SigmaCertificate]) -> Result<Atlas> {
    if c.deck_rank() != 1 {
        return Err(Error::RankUnsupported { deck_rank: c.deck_rank() });
    }
    if c.ring() != CoeffRing::Integers {
        return Err(Error::RingUnsupported(alloc::format!("{:?}", c.ring())));
    }
    let cover = Cover::new(c)?;
    let mut chosen = Vec::new();
    for sign in [1i64, -1] {
        let cert = certificates
            .iter()
            .find(|cert| cert.xi().rank() == 1 && cert.xi().coeffs()[0].signum() == sign && cert.k() >= n)
            .ok_or_else(|| Error::MissingDirection(Character::from_ints(&[sign]).expect("nonzero")))?;
        verify_certificate(c, cert).map_err(|e| Error::IdentityViolation(alloc::format!("{e}")))?;
        chosen.push(cert.clone());
    }
    let mut iterations = alloc::vec![1usize; chosen.len()];
    loop {
        let entries: Vec<AtlasEntry> =
            chosen.iter().zip(&iterations).map(|(cert, &m)| build_entry(c, n, cert, m)).collect::<Result<_>>()?;
        let measured: Vec<Measured> = entries.iter().map(|e| measure(&cover, n, e)).collect();
        let m = measured.iter().map(|x| x.m).max().unwrap_or(0).max(1);
        let l = measured.iter().map(|x| x.l).max().unwrap_or(0).max(1);
        let target = 3 * m * n as i64;
        let mut done = true;
        for (i, x) in measured.iter().enumerate() {
            match x.r {
                Some(r) if r <= target => {
                    if r <= 0 {
                        return Err(Error::ConstantsInfeasible(alloc::format!("shift {r} is not positive")));
                    }
                    if iterations[i] >= MAX_ITERATIONS {
                        return Err(Error::ConstantsInfeasible(alloc::format!("r = {r} ≤ 3Mn = {target}")));
                    }
                    iterations[i] += 1;
                    done = false;
                }
                _ => {}
            }
        }
        if done {
            let r = measured.iter().filter_map(|x| x.r).min().unwrap_or(target + 1);
            return Ok(Atlas { n, entries, r, m, l });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::builtin;
    use crate::decide::build_contraction;

    fn certs(name: &str, k: usize) -> Vec<SigmaCertificate> {
        let c = builtin(name, CoeffRing::Integers).unwrap();
        [1, -1]
            .iter()
            .filter_map(|&s| build_contraction(&c, &Character::from_ints(&[s]).unwrap(), k, None).ok())
            .collect()
    }

    #[test]
    fn circle_atlas_meets_the_shift_bound() {
        let c = builtin("circle", CoeffRing::Integers).unwrap();
        let atlas = assemble_atlas(&c, 1, &certs("circle", 1)).unwrap();
        assert_eq!(atlas.entries.len(), 2);
        assert!(atlas.r > 3 * atlas.m);
        assert_eq!(atlas.entry_for(5).sign, -1);
        assert_eq!(atlas.entry_for(-5).sign, 1);
    }

    #[test]
    fn bs12_lacks_the_positive_direction() {
        let c = builtin("bs12", CoeffRing::Integers).unwrap();
        let err = assemble_atlas(&c, 1, &certs("bs12", 1)).unwrap_err();
        assert_eq!(err, Error::MissingDirection(Character::from_ints(&[1]).unwrap()));
    }
}
