//! File formats, run records, the parallel search driver and the
//! acceptance suite behind the `planecode` binary.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod record;
pub mod report;
pub mod suite;
