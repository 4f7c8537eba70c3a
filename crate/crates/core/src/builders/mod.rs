//! Constructors for based free complexes.

pub mod builtin;
pub mod mapping_torus;
pub mod presentation;
pub mod random;

pub use builtin::{builtin, golden_verdicts, BUILTIN_NAMES};
pub use mapping_torus::mapping_torus;
pub use presentation::{presentation_complex, PresentationInput};
pub use random::{random_complex, RandomShape, Source};
