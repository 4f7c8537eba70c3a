use alloc::string::String;
use core::fmt;

use crate::lattice::Character;

/// Errors raised by the algebraic engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    ZeroCharacter,
    ZeroInput,
    /// The ξ-lowest part is not a unit monomial.
    NotAUnit,
    RingMismatch,
    InvalidCoefficient(String),
    InvalidComplex(String),
    NonPositiveShift,
    NotACycle { degree: usize },
    NotAChainMap { degree: usize },
    /// The operation needs deck rank 1.
    RankUnsupported { deck_rank: usize },
    /// The operation needs a different coefficient ring.
    RingUnsupported(String),
    NotInSigma { xi: Character, degree: usize },
    MissingDirection(Character),
    ConstantsInfeasible(String),
    UnknownBuiltin(String),
    InvalidPresentation(String),
    Parse(String),
    IdentityViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroCharacter => write!(f, "character must be nonzero"),
            Error::ZeroInput => write!(f, "input must be nonzero"),
            Error::NotAUnit => write!(f, "lowest part is not a unit monomial"),
            Error::RingMismatch => write!(f, "coefficient ring mismatch"),
            Error::InvalidCoefficient(s) => write!(f, "invalid coefficient: {s}"),
            Error::InvalidComplex(s) => write!(f, "invalid complex: {s}"),
            Error::NonPositiveShift => write!(f, "valuation shift must be positive"),
            Error::NotACycle { degree } => write!(f, "chain in degree {degree} is not a cycle"),
            Error::NotAChainMap { degree } => write!(f, "map does not commute with the boundary in degree {degree}"),
            Error::RankUnsupported { deck_rank } => {
                write!(f, "operation requires deck rank 1, complex has deck rank {deck_rank}")
            }
            Error::RingUnsupported(s) => write!(f, "unsupported coefficient ring: {s}"),
            Error::NotInSigma { xi, degree } => {
                write!(f, "direction {xi} is not certified in Sigma^{degree}")
            }
            Error::MissingDirection(xi) => write!(f, "no certificate for direction {xi}"),
            Error::ConstantsInfeasible(s) => write!(f, "constants infeasible: {s}"),
            Error::UnknownBuiltin(s) => write!(f, "unknown builtin complex `{s}`"),
            Error::InvalidPresentation(s) => write!(f, "invalid presentation: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::IdentityViolation(s) => write!(f, "identity violated: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
