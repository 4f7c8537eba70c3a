//! Finite certificates for Σ^k membership and their exact verifier.
//!
//! A certificate is a chain map `A` together with a homotopy `δ̄` satisfying
//! `∂δ̄ + δ̄∂ = 1 − A` in degrees `≤ k` and `v(A x) ≥ v(x) + ε` on every basis
//! element of degree `≤ k`, where `v` is the standard valuation for ξ.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::chain::{check_homotopy, telescope, ChainHomotopy, ChainMap};
use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::lattice::Character;
use crate::ring::Scalar;
use crate::valuation::Valuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCertificate {
    xi: Character,
    k: usize,
    epsilon: Scalar,
    a: ChainMap,
    delta: ChainHomotopy,
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Shape(String),
    NotAChainMap { degree: usize },
    HomotopyFails { degree: usize },
    ShiftTooSmall { degree: usize, basis: usize, shift: Option<i64> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Shape(s) => write!(f, "malformed certificate: {s}"),
            Rejection::NotAChainMap { degree } => write!(f, "A does not commute with the boundary in degree {degree}"),
            Rejection::HomotopyFails { degree } => write!(f, "homotopy identity fails in degree {degree}"),
            Rejection::ShiftTooSmall { degree, basis, shift } => match shift {
                Some(s) => write!(f, "basis element {basis} in degree {degree} is only shifted by {s}"),
                None => write!(f, "basis element {basis} in degree {degree} has no valuation"),
            },
        }
    }
}

impl SigmaCertificate {
    pub fn new(xi: Character, k: usize, epsilon: Scalar, a: ChainMap, delta: ChainHomotopy) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::NonPositiveShift);
        }
        Ok(SigmaCertificate { xi, k, epsilon, a, delta })
    }

    pub fn xi(&self) -> &Character {
        &self.xi
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn epsilon(&self) -> &Scalar {
        &self.epsilon
    }

    pub fn map(&self) -> &ChainMap {
        &self.a
    }

    pub fn homotopy(&self) -> &ChainHomotopy {
        &self.delta
    }

    /// The certificate for `A^m` with the telescoped homotopy and shift `m·ε`.
    pub fn iterate(&self, m: usize) -> Result<SigmaCertificate> {
        let a = self.a.iterate(m)?;
        let delta = telescope(&self.delta, &self.a, m)?;
        let epsilon = &self.epsilon * Scalar::from_integer(BigInt::from(m));
        SigmaCertificate::new(self.xi.clone(), self.k, epsilon, a, delta)
    }

    /// Same chain data, checked against another direction and shift.
    pub fn retarget(&self, xi: Character, epsilon: Scalar) -> Result<SigmaCertificate> {
        SigmaCertificate::new(xi, self.k, epsilon, self.a.clone(), self.delta.clone())
    }
}

/// Minimum of `v(Ax) − v(x)` over basis elements of degree `≤ k`
/// (`None` when every image vanishes, i.e. an infinite shift).
pub fn certificate_shift(c: &BasedFreeComplex, a: &ChainMap, xi: &Character, k: usize) -> Option<i64> {
    let v = Valuation::standard(c, xi);
    let mut best: Option<i64> = None;
    for i in 0..=k.min(c.dim()) {
        for j in 0..c.rank(i) {
            if let Some(w) = v.column(i, &a.maps[i], j) {
                let s = w - v.basis(i, j);
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
    }
    best
}

/// Exact verification; sound independently of how the certificate was found.
pub fn verify_certificate(c: &BasedFreeComplex, cert: &SigmaCertificate) -> core::result::Result<(), Rejection> {
    if cert.xi.rank() != c.deck_rank() {
        return Err(Rejection::Shape(format!("direction has rank {}, complex {}", cert.xi.rank(), c.deck_rank())));
    }
    if c.ranks().iter().all(|&r| r == 0) {
        return Ok(());
    }
    let k = cert.k.min(c.dim());
    cert.a.check_shapes(c, c).map_err(|e| Rejection::Shape(format!("{e}")))?;
    for i in 0..=k {
        let Some(h) = cert.delta.maps.get(i) else {
            return Err(Rejection::Shape(format!("missing homotopy in degree {i}")));
        };
        if h.rows() != c.rank(i + 1) || h.cols() != c.rank(i) {
            return Err(Rejection::Shape(format!("homotopy in degree {i} has the wrong shape")));
        }
    }
    match cert.a.first_non_commuting(c, c) {
        Ok(None) => {}
        Ok(Some(degree)) => return Err(Rejection::NotAChainMap { degree }),
        Err(e) => return Err(Rejection::Shape(format!("{e}"))),
    }
    let id = ChainMap::identity(c);
    match check_homotopy(c, &cert.delta, &id, &cert.a, Some(k)) {
        Ok(None) => {}
        Ok(Some(degree)) => return Err(Rejection::HomotopyFails { degree }),
        Err(e) => return Err(Rejection::Shape(format!("{e}"))),
    }
    let v = Valuation::standard(c, &cert.xi);
    for i in 0..=k {
        for j in 0..c.rank(i) {
            if let Some(w) = v.column(i, &cert.a.maps[i], j) {
                let shift = w - v.basis(i, j);
                if Scalar::from_integer(BigInt::from(shift)) < cert.epsilon {
                    return Err(Rejection::ShiftTooSmall { degree: i, basis: j, shift: Some(shift) });
                }
            }
        }
    }
    Ok(())
}

/// Re-verifies the chain data of `cert` at another direction, using the
/// shift recomputed there. Returns the shift on success.
pub fn reverify_at(c: &BasedFreeComplex, cert: &SigmaCertificate, xi: &Character) -> Result<Scalar> {
    let shift = match certificate_shift(c, &cert.a, xi, cert.k) {
        Some(s) if s > 0 => Scalar::from_integer(BigInt::from(s)),
        Some(_) => return Err(Error::NonPositiveShift),
        None => Scalar::from_integer(BigInt::from(1)),
    };
    let moved = cert.retarget(xi.clone(), shift.clone())?;
    verify_certificate(c, &moved).map_err(|r| Error::IdentityViolation(format!("{r}")))?;
    Ok(shift)
}

impl core::error::Error for Rejection {}

