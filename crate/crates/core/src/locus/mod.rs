//! Degeneracy loci: exact kernel intersections for rank-one spans in any
//! dimension, a numerical solver in the plane, symmetric decompositions and
//! the fiber system of two matrices.

mod decompose;
mod family;
mod fiber;
mod result;
mod solver;
mod structured;
pub mod univariate;

pub use decompose::{decompose_symmetric_tuple, Decomposition, DECOMPOSE_TOL};
pub use family::{
    random_coefficients, random_family, random_int_matrix, random_int_vector, random_invertible,
    random_symmetric_family, random_symmetric_tuple, span_tuple, RankOneFamily, SpanCoefficients,
};
pub use fiber::{fiber_system, FiberSystem};
pub use result::{ComponentLabel, Geometry, LocusComponent, LocusResult};
pub use solver::{certify_exact, compute_locus, solve_locus_p2, sylvester_det, DEDUP_TOL, REAL_TOL, RECONSTRUCT_DENOM};
pub use structured::{evaluate_normalized, membership, minor_residual, structured_locus, vanishes_on};
