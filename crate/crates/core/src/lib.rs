//! Finite projective planes and the p-ary codes of their incidence
//! matrices: finite fields, PG(2,q), dual-code words built from Baer and
//! antipodal subplanes, structural analysis of small-weight dual words, and
//! a backtracking search for embeddings of partial linear spaces.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod analyze;
pub mod antipodal;
pub mod bits;
pub mod codes;
pub mod construct;
pub mod field;
pub mod geometry;
pub mod search;

/// Crate version, echoed in run records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use codes::{CodeWord, LinearCode};
pub use field::{Field, FieldElement, FieldError};
pub use geometry::{GeometryError, Plane, SubplaneResult};
