//! Polynomials over the rationals, matrices of linear forms and pencils.

mod linear_matrix;
mod poly;
mod tuple;

pub use linear_matrix::{build_l, combinations, det_pencil, pencil, LinearMatrix};
pub use poly::{poly_det, var_names, Monomial, MultiPoly, PolyJson, TermJson};
pub use tuple::MatrixTuple;

/// Alias matching the axis-swap name used throughout the crate.
pub fn hilbert_burch_swap(l: &LinearMatrix) -> LinearMatrix {
    l.hilbert_burch_swap()
}

/// Maximal minors of a linear matrix, ordered by column subset.
pub fn maximal_minors(l: &LinearMatrix) -> crate::Result<Vec<MultiPoly>> {
    l.maximal_minors()
}
