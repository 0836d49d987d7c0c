//! Fixed example inputs: the Cayley tuple, the Sylvester families, the
//! standard quadrilateral and the fiber-system matrices.

use crate::exactlin::{rat, Mat, Rational};
use crate::pencil::{MatrixTuple, MultiPoly};

pub fn unit(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|k| rat((k == i) as i64)).collect()
}

pub fn ones(m: usize) -> Vec<Rational> {
    vec![rat(1); m]
}

/// `e_1, ..., e_m, (1, ..., 1)`.
pub fn sylvester_vectors(m: usize) -> Vec<Vec<Rational>> {
    let mut vs: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    vs.push(ones(m));
    vs
}

/// `A_i = v_i v_iᵀ` for the Sylvester vectors.
pub fn sylvester_tuple(m: usize) -> MatrixTuple {
    MatrixTuple::new(sylvester_vectors(m).iter().map(|v| Mat::outer(v, v)).collect()).expect("square rank-one matrices")
}

/// `A_1 = e_1e_1ᵀ, A_2 = e_2e_2ᵀ, A_3 = e_3e_3ᵀ, A_4 = all ones`.
pub fn cayley_tuple() -> MatrixTuple {
    sylvester_tuple(3)
}

/// Symmetric rank-one tuple whose kernels are the lines `x = 0, y = 0,
/// z = 0, x + y + z = 0`; coincides with the Cayley tuple.
pub fn standard_quadrilateral_tuple() -> MatrixTuple {
    sylvester_tuple(3)
}

/// Tuple with pencil `[[-u1,u4,u4],[u4,-u2,u4],[u4,u4,-u3]]`.
pub fn second_symmetroid_tuple() -> MatrixTuple {
    MatrixTuple::from_i64(&[
        &[&[-1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
        &[&[0, 0, 0], &[0, -1, 0], &[0, 0, 0]],
        &[&[0, 0, 0], &[0, 0, 0], &[0, 0, -1]],
        &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
    ])
    .expect("3x3 matrices")
}

/// The six intersection points of `x = 0, y = 0, z = 0, x + y + z = 0`.
pub fn standard_six_points() -> Vec<Vec<Rational>> {
    [[1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|p| p.iter().map(|&v| rat(v)).collect())
        .collect()
}

pub fn fiber_a1() -> Mat {
    Mat::from_i64(&[[3, 5, 6], [7, 2, 4], [5, 2, 8]])
}

pub fn fiber_a2() -> Mat {
    Mat::from_i64(&[[1, 4, 3], [5, 3, 2], [5, 1, 7]])
}

pub fn fiber_expected_q() -> Mat {
    Mat::from_i64(&[
        [90, 64, -90, -64, 0, 0],
        [-6, -12, 0, 0, 6, 12],
        [0, 0, 68, 37, -68, -37],
    ])
}

/// `xy(x+y), xz(x+z), yz(y+z), xyz`.
pub fn standard_cubic_basis() -> Vec<MultiPoly> {
    let x = MultiPoly::var(3, 0);
    let y = MultiPoly::var(3, 1);
    let z = MultiPoly::var(3, 2);
    vec![
        &(&x * &y) * &(&x + &y),
        &(&x * &z) * &(&x + &z),
        &(&y * &z) * &(&y + &z),
        &(&x * &y) * &z,
    ]
}

/// `2u4³ + u4²(u1+u2+u3) - u1u2u3`.
pub fn second_symmetroid_form() -> MultiPoly {
    let u = |i| MultiPoly::var(4, i);
    let u4sq = u(3).pow(2);
    let sum = &(&u(0) + &u(1)) + &u(2);
    let a = u(3).pow(3).scale(&rat(2));
    let b = &u4sq * &sum;
    let c = &(&u(0) * &u(1)) * &u(2);
    &(&a + &b) - &c
}
