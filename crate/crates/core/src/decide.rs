//! Deciding ξ ∈ Σ^k: vanishing of Novikov homology in degrees ≤ k.
//!
//! A partial contraction `δ` with `∂δ + δ∂ = 1` in degrees ≤ k is built over
//! the localization S⁻¹Λ one degree at a time. If it exists, its expansion
//! in the completion is cut off below the valuation of the target basis
//! element; the cut-off `δ̄` and `A = 1 − ∂δ̄ − δ̄∂` form a certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::certificate::{certificate_shift, verify_certificate, SigmaCertificate};
use crate::chain::{ChainHomotopy, ChainMap};
use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::Character;
use crate::matrix::Matrix;
use crate::ring::{CoeffRing, Scalar};
use crate::series::novikov_invert;
use crate::solve::{solve_localized, FracMatrix, SolveOutcome};
use crate::specialize::{find_witness, SpecializationWitness};
use crate::valuation::Valuation;

/// Why a Σ^k membership fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoWitness {
    /// A Λ-cycle whose class survives in the Novikov homology: no
    /// combination of boundaries over S⁻¹Λ reaches it and elimination was
    /// complete.
    SurvivingCycle { degree: usize, cycle: Vec<GroupRingElem> },
    /// Nonzero homology after a ring map out of the completion.
    Specialized(SpecializationWitness),
}

impl NoWitness {
    pub fn degree(&self) -> usize {
        match self {
            NoWitness::SurvivingCycle { degree, .. } => *degree,
            NoWitness::Specialized(w) => w.degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undecided {
    pub window: i64,
    pub diagnostics: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaStatus {
    Yes(SigmaCertificate),
    No(NoWitness),
    Undecided(Undecided),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaVerdict {
    pub xi: Character,
    pub k: usize,
    pub ring: CoeffRing,
    pub status: SigmaStatus,
}

impl SigmaVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.status, SigmaStatus::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self.status, SigmaStatus::No(_))
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            SigmaStatus::Yes(_) => "Yes",
            SigmaStatus::No(_) => "No",
            SigmaStatus::Undecided(_) => "Undecided",
        }
    }

    pub fn certificate(&self) -> Option<&SigmaCertificate> {
        match &self.status {
            SigmaStatus::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Where the degree-by-degree construction stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractionFailure {
    /// The cycle is not a boundary over S⁻¹Λ (exact obstruction).
    Inconsistent { degree: usize, cycle: Vec<GroupRingElem> },
    /// Elimination found no pivot in S.
    Stuck { degree: usize, column: usize },
}

/// `deltas[i] : C_i → C_{i+1}` over S⁻¹Λ, for `i = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub deltas: Vec<FracMatrix>,
}

/// `ρ_i = 1 − δ_{i−1}∂_i`, whose columns are cycles.
fn residual(c: &BasedFreeComplex, i: usize, prev: Option<&FracMatrix>) -> Result<FracMatrix> {
    let n = c.rank(i);
    match prev {
        None => Ok(FracMatrix::identity(c.ring(), c.deck_rank(), n)),
        Some(d) => {
            let num = Matrix::scalar(&d.den, n).sub(&d.num.mul(&c.boundary(i))?)?;
            Ok(FracMatrix { num, den: d.den.clone() })
        }
    }
}

pub fn partial_contraction(c: &BasedFreeComplex, xi: &Character, k: usize) -> Result<core::result::Result<Contraction, ContractionFailure>> {
    let mut deltas: Vec<FracMatrix> = Vec::new();
    for i in 0..=k.min(c.dim()) {
        let rho = residual(c, i, deltas.last())?;
        match solve_localized(&c.boundary(i + 1), &rho, xi)? {
            SolveOutcome::Solved(y) => deltas.push(y),
            SolveOutcome::Inconsistent { column } => {
                let cycle = rho.num.column_vec(column);
                return Ok(Err(ContractionFailure::Inconsistent { degree: i, cycle }));
            }
            SolveOutcome::Stuck { column } => return Ok(Err(ContractionFailure::Stuck { degree: i, column })),
        }
    }
    Ok(Ok(Contraction { deltas }))
}

/// Cuts the completed contraction off and assembles the certificate.
/// Returns `None` if the needed expansion is longer than `window`.
pub fn cut_off(c: &BasedFreeComplex, xi: &Character, k: usize, contraction: &Contraction, window: i64) -> Result<Option<SigmaCertificate>> {
    let v = Valuation::standard(c, xi);
    let ring = c.ring();
    let rank = c.deck_rank();
    let top = k.min(c.dim());
    let mut bar: Vec<Matrix> = Vec::new();
    for (i, d) in contraction.deltas.iter().enumerate().take(top + 1) {
        let vden = d.den.valuation(xi).ok_or(Error::ZeroInput)?;
        let mut need = 0i64;
        for ((l, j), e) in d.num.entries() {
            let level = v.basis(i, j) - v.basis(i + 1, l);
            let rel = level - (e.valuation(xi).expect("nonzero") - vden);
            need = need.max(rel);
        }
        if need > window {
            return Ok(None);
        }
        let inv = novikov_invert(&d.den, xi, need)?;
        let mut m = Matrix::zero(ring, rank, c.rank(i + 1), c.rank(i));
        for ((l, j), e) in d.num.entries() {
            let level = v.basis(i, j) - v.basis(i + 1, l);
            m.set(l, j, (e * &inv.terms).truncate_above(xi, level));
        }
        bar.push(m);
    }
    let homotopy = ChainHomotopy { maps: bar };
    let id = ChainMap::identity(c);
    let maps = (0..=c.dim())
        .map(|i| {
            let part = homotopy.boundary_part(i, c, c)?;
            id.maps[i].sub(&part)
        })
        .collect::<Result<Vec<_>>>()?;
    let a = ChainMap { maps };
    let eps = match certificate_shift(c, &a, xi, top) {
        Some(s) if s > 0 => s,
        Some(s) => return Err(Error::IdentityViolation(format!("cut-off certificate has shift {s}"))),
        None => 1,
    };
    let cert = SigmaCertificate::new(xi.clone(), top, Scalar::from_integer(eps.into()), a, homotopy)?;
    Ok(Some(cert))
}

/// Decides whether ξ ∈ Σ^k(C; R) for the coefficient ring of `c`.
///
/// Deck rank one gives exact answers over a field, and over ℤ whenever the
/// elimination runs on unit pivots or a specialization shows nonvanishing.
/// Higher deck rank returns `Yes` with a certificate or `Undecided`.
pub fn sigma_membership(c: &BasedFreeComplex, xi: &Character, k: usize, window: Option<i64>) -> Result<SigmaVerdict> {
    if let Err(v) = c.validate() {
        return Err(Error::InvalidComplex(format!("{v}")));
    }
    if xi.rank() != c.deck_rank() {
        return Err(Error::DimensionMismatch { expected: c.deck_rank(), found: xi.rank() });
    }
    let window = window.unwrap_or_else(|| c.default_window(xi));
    if window <= 0 {
        return Err(Error::InvalidCoefficient("window must be positive".into()));
    }
    let top = k.min(c.dim());
    let verdict = |status| SigmaVerdict { xi: xi.clone(), k, ring: c.ring(), status };
    let undecided = |diagnostics: String| verdict(SigmaStatus::Undecided(Undecided { window, diagnostics }));
    match partial_contraction(c, xi, top)? {
        Ok(contraction) => match cut_off(c, xi, top, &contraction, window)? {
            Some(cert) => {
                if let Err(r) = verify_certificate(c, &cert) {
                    return Err(Error::IdentityViolation(format!("constructed certificate rejected: {r}")));
                }
                Ok(verdict(SigmaStatus::Yes(cert)))
            }
            None => Ok(undecided(format!("contraction found but its cut-off needs more than window {window}"))),
        },
        Err(ContractionFailure::Inconsistent { degree, cycle }) => {
            if c.deck_rank() == 1 {
                Ok(verdict(SigmaStatus::No(NoWitness::SurvivingCycle { degree, cycle })))
            } else {
                Ok(undecided(format!(
                    "degree {degree}: a cycle is not a boundary over the localization; negative answers are only issued in deck rank 1"
                )))
            }
        }
        Err(ContractionFailure::Stuck { degree, column }) => {
            if c.deck_rank() == 1 && c.ring() == CoeffRing::Integers {
                if let Some(w) = find_witness(c, xi, top)? {
                    return Ok(verdict(SigmaStatus::No(NoWitness::Specialized(w))));
                }
            }
            Ok(undecided(format!("degree {degree}: no pivot with unit lowest part in column {column} of d_{}", degree + 1)))
        }
    }
}

/// The certificate behind a `Yes`, or `NotInSigma`.
pub fn build_contraction(c: &BasedFreeComplex, xi: &Character, k: usize, window: Option<i64>) -> Result<SigmaCertificate> {
    let v = sigma_membership(c, xi, k, window)?;
    match v.status {
        SigmaStatus::Yes(cert) => Ok(cert),
        _ => Err(Error::NotInSigma { xi: xi.clone(), degree: k }),
    }
}
