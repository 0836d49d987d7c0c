//! Exact rational linear algebra with a floating-point mirror for numeric rank.

mod mat;
mod numeric;
mod rational;
mod subspace;

pub use mat::{cross3, dot, Mat, Rref};
pub use numeric::{
    angular_distance, norm_c, normalize_c, numeric_rank, numeric_rank_complex, phase_normalize, DEFAULT_REL_TOL,
};
pub use rational::{
    format_rational, frac, from_f64_exact, lcm_denominator, parse_rational, primitive_integer_vector, rat, reconstruct,
    serde_rational, serde_rational_vec, to_f64, Rational, RationalRepr,
};
pub use subspace::Subspace;

/// Rational matrix rank computed by rref (used as the oracle for `Mat::rank`).
pub fn rref_rank(m: &Mat) -> usize {
    m.rref().rank
}
