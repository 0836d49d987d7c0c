//! Degeneracy loci of tuples of linear operators.
//!
//! Given matrices `A_1, ..., A_r` acting on `Q^m`, the degeneracy locus is the
//! set of projective points `x` where `[A_1 x ... A_r x]` drops rank. This
//! crate computes such loci exactly for tuples in the span of `m + 1`
//! rank-one matrices and numerically for arbitrary tuples in the plane,
//! recognises the quadrilateral and Desargues configurations they form,
//! builds the associated symmetroid pencils, estimates dimensions of the
//! parametrizing varieties from exact Jacobian ranks and decides the phase
//! retrieval property of measurement tuples.

pub mod analysis;
pub mod catalog;
pub mod config;
pub mod error;
pub mod exactlin;
pub mod locus;
pub mod par;
pub mod pencil;
pub mod point;
pub mod symmetroid;

pub use error::{Error, Result};
pub use point::ProjPoint;
