//! Classification of binary linear codes with a prescribed dual distance.
//!
//! Codes are grown one coordinate at a time from the full space, keeping every
//! set of `dperp - 1` columns of the generator matrix independent, and are
//! deduplicated up to coordinate permutation. For larger dimensions a
//! branch-and-bound search assembles codes from classified residual codes.

pub mod bounds;
pub mod classifier;
pub mod equivalence;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod gf2;
pub mod metrics;
pub mod par;
pub mod propersearch;
pub mod residual;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use metrics::{Distance, WeightEnumerator};
