//! Exact computation of limit linear systems and limit ramification
//! (Weierstrass) divisors for one-parameter degenerations of plane curves
//! whose special fibre is a nodal curve with rational components.
//!
//! The pipeline: describe a family `G = q_1 ... q_t + t*h` ([`family`]),
//! compute the saturated section lattice and the associated extension of each
//! component ([`lattice`]), then assemble per-component Wronskian divisors,
//! connecting numbers, and node weights into the limit ramification divisor
//! ([`ramification`]). All arithmetic is exact rational.

pub mod binary;
pub mod error;
pub mod examples;
pub mod factor;
pub mod family;
pub mod lattice;
pub mod matrix;
pub mod parse;
pub mod ramification;
pub mod report;
pub mod scalar;
pub mod ternary;
pub mod tjet;
pub mod unipoly;

pub use error::{Error, Result};
