//! File formats, reports and the command line for `sigma-core`.

pub mod error;
pub mod format;
pub mod report;
pub mod run;
pub mod table;
