use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{cross3, dot, Mat, Rational};

/// Coefficient matrix of the linear conditions on the column weights
/// `α_{1j}, α_{2j}` of `A_3(j) = α_{1j} A_1(j) + α_{2j} A_2(j)` that put
/// `e_p - e_q` into the locus, for `(p, q) = (1, 2), (1, 3), (2, 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSystem {
    /// Columns ordered `α11, α21, α12, α22, α13, α23`.
    pub q: Mat,
    pub rank: usize,
}

/// Row `(p, q)` expands
/// `(A_1(p) - A_1(q)) ∧ (A_2(p) - A_2(q)) ∧ (A_3(p) - A_3(q)) = 0`
/// linearly in the weights.
pub fn fiber_system(a1: &Mat, a2: &Mat) -> Result<FiberSystem> {
    for a in [a1, a2] {
        if a.rows() != 3 || a.cols() != 3 {
            return Err(Error::dims("fiber system needs 3x3 matrices"));
        }
    }
    let zero = Rational::from_integer(0.into());
    let mut q = Mat::zeros(3, 6);
    for (row, (p, s)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
        let (c1p, c1s) = (a1.column(p), a1.column(s));
        let (c2p, c2s) = (a2.column(p), a2.column(s));
        let d1: Vec<Rational> = c1p.iter().zip(&c1s).map(|(x, y)| x - y).collect();
        let d2: Vec<Rational> = c2p.iter().zip(&c2s).map(|(x, y)| x - y).collect();
        let n = cross3(&d1, &d2)?;
        // det[d1, d2, v] = (d1 × d2) · v
        q[(row, 2 * p)] = dot(&n, &c1p);
        q[(row, 2 * p + 1)] = dot(&n, &c2p);
        q[(row, 2 * s)] = &zero - dot(&n, &c1s);
        q[(row, 2 * s + 1)] = &zero - dot(&n, &c2s);
    }
    let rank = q.rank();
    Ok(FiberSystem { q, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::rat;

    #[test]
    fn printed_example() {
        let fs = fiber_system(&catalog::fiber_a1(), &catalog::fiber_a2()).unwrap();
        assert_eq!(fs.rank, 3);
        let want = catalog::fiber_expected_q();
        for i in 0..3 {
            let same = fs.q.row(i) == want.row(i);
            let flipped = fs.q.row(i).iter().zip(want.row(i)).all(|(a, b)| a == &(-b));
            assert!(same || flipped, "row {i}: {:?}", fs.q.row(i));
        }
    }

    #[test]
    fn equal_matrices_give_zero_system() {
        let a = catalog::fiber_a1();
        let fs = fiber_system(&a, &a).unwrap();
        assert!(fs.q.is_zero());
        assert_eq!(fs.rank, 0);
    }

    #[test]
    fn solutions_put_difference_points_in_locus() {
        // any kernel vector of Q gives A_3 whose columns make e_p - e_q degenerate
        let (a1, a2) = (catalog::fiber_a1(), catalog::fiber_a2());
        let fs = fiber_system(&a1, &a2).unwrap();
        for alpha in fs.q.kernel().basis_vectors() {
            let a3 = Mat::from_fn(3, 3, |i, j| {
                &alpha[2 * j] * &a1[(i, j)] + &alpha[2 * j + 1] * &a2[(i, j)]
            });
            for (p, s) in [(0, 1), (0, 2), (1, 2)] {
                let mut x = vec![rat(0); 3];
                x[p] = rat(1);
                x[s] = rat(-1);
                let cols: Vec<Vec<Rational>> = [&a1, &a2, &a3].iter().map(|a| a.mul_vec(&x).unwrap()).collect();
                assert_eq!(Mat::from_columns(&cols).unwrap().det().unwrap(), rat(0));
            }
        }
    }
}
