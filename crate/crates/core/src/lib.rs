//! Exact chain-level computation of homological Sigma invariants over
//! group rings of free-abelian deck groups.
//!
//! The crate is `no_std` (with `alloc`); IO and the command line live in the
//! companion `sigma` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod group_ring;
pub mod builders;
pub mod certificate;
pub mod chain;
pub mod complex;
pub mod decide;
pub mod domination;
pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod movable;
pub mod qlinalg;
pub mod report;
pub mod ring;
pub mod series;
pub mod smith;
pub mod solve;
pub mod specialize;
pub mod valuation;

pub use error::{Error, Result};
pub use group_ring::GroupRingElem;
pub use lattice::{Character, InnerProduct, LatticePoint};
pub use ring::{CoeffRing, Scalar};
pub use series::{novikov_invert, NovikovSeries};
