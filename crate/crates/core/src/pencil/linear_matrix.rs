use serde::{Deserialize, Serialize};

use super::poly::{poly_det, MultiPoly};
use super::tuple::MatrixTuple;
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Rational};

/// A matrix of linear forms: `rows x cols` entries, each a linear form in
/// `vars` variables, stored as the coefficient tensor `T[i][j][k]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearMatrix {
    rows: usize,
    cols: usize,
    vars: usize,
    #[serde(with = "crate::exactlin::serde_rational_vec")]
    tensor: Vec<Rational>,
}

impl LinearMatrix {
    pub fn zeros(rows: usize, cols: usize, vars: usize) -> Self {
        LinearMatrix {
            rows,
            cols,
            vars,
            tensor: vec![Rational::from_integer(0.into()); rows * cols * vars],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, vars: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut tensor = Vec::with_capacity(rows * cols * vars);
        for i in 0..rows {
            for j in 0..cols {
                for k in 0..vars {
                    tensor.push(f(i, j, k));
                }
            }
        }
        LinearMatrix {
            rows,
            cols,
            vars,
            tensor,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.tensor[(i * self.cols + j) * self.vars + k]
    }

    pub fn entry(&self, i: usize, j: usize) -> MultiPoly {
        let start = (i * self.cols + j) * self.vars;
        MultiPoly::linear(&self.tensor[start..start + self.vars])
    }

    pub fn entries(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Concrete matrix at a point.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Mat> {
        if x.len() != self.vars {
            return Err(Error::dims(format!("{} values for {} variables", x.len(), self.vars)));
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            (0..self.vars).fold(Rational::from_integer(0.into()), |acc, k| {
                acc + self.coeff(i, j, k) * &x[k]
            })
        }))
    }

    /// Coefficient matrix of variable `k`.
    pub fn slice(&self, k: usize) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.coeff(i, j, k).clone())
    }

    /// One polynomial per `rows`-subset of columns, subsets in lexicographic
    /// order.
    pub fn maximal_minors(&self) -> Result<Vec<MultiPoly>> {
        Ok(self.maximal_minors_labeled()?.into_iter().map(|(_, p)| p).collect())
    }

    pub fn maximal_minors_labeled(&self) -> Result<Vec<(Vec<usize>, MultiPoly)>> {
        if self.rows > self.cols {
            return Err(Error::dims(format!(
                "maximal minors need rows <= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        let entries = self.entries();
        Ok(combinations(self.cols, self.rows)
            .into_iter()
            .map(|subset| {
                let sub: Vec<Vec<MultiPoly>> = entries
                    .iter()
                    .map(|row| subset.iter().map(|&j| row[j].clone()).collect())
                    .collect();
                let d = poly_det(&sub, self.vars);
                (subset, d)
            })
            .collect())
    }

    /// Swaps the column and variable axes: the output `U` satisfies
    /// `L(x) · u = U(u) · x`.
    pub fn hilbert_burch_swap(&self) -> LinearMatrix {
        LinearMatrix::from_fn(self.rows, self.vars, self.cols, |i, k, j| self.coeff(i, j, k).clone())
    }

    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::dims("determinant of a non-square linear matrix"));
        }
        Ok(poly_det(&self.entries(), self.vars))
    }

    /// Adjugate as a matrix of polynomials of degree `rows - 1`.
    #[allow(clippy::needless_range_loop)]
    pub fn adjugate(&self) -> Result<Vec<Vec<MultiPoly>>> {
        if self.rows != self.cols {
            return Err(Error::dims("adjugate of a non-square linear matrix"));
        }
        let n = self.rows;
        let entries = self.entries();
        let mut adj = vec![vec![MultiPoly::zero(self.vars); n]; n];
        for i in 0..n {
            for j in 0..n {
                // adj[j][i] = (-1)^{i+j} det(minor without row i, column j)
                let sub: Vec<Vec<MultiPoly>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| entries[r][c].clone()).collect())
                    .collect();
                let d = poly_det(&sub, self.vars);
                adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
            }
        }
        Ok(adj)
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `L = [A_1 x ... A_r x]` with `T[i][j][k] = (A_j)_{i,k}`.
pub fn build_l(t: &MatrixTuple) -> LinearMatrix {
    let m = t.m();
    LinearMatrix::from_fn(m, t.r(), m, |i, j, k| t.get(j)[(i, k)].clone())
}

/// The pencil `Σ u_i A_i` as an `m x m` matrix of linear forms in `u`.
pub fn pencil(t: &MatrixTuple) -> LinearMatrix {
    build_l(t).hilbert_burch_swap()
}

/// `det(Σ u_i A_i)` as a form of degree `m` in `u_1, ..., u_r`.
pub fn det_pencil(t: &MatrixTuple) -> MultiPoly {
    pencil(t).det().expect("pencil is square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::rat;
    use num_traits::Zero;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            combinations(4, 3),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(combinations(5, 4).len(), 5);
    }

    #[test]
    fn l_of_sylvester_family() {
        let t = catalog::sylvester_tuple(4);
        let l = build_l(&t);
        let names = crate::pencil::var_names("x", 4);
        for i in 0..4 {
            for j in 0..4 {
                let e = l.entry(i, j);
                if i == j {
                    assert_eq!(e.display_with(&names), format!("x{}", i + 1));
                } else {
                    assert!(e.is_zero());
                }
            }
            assert_eq!(l.entry(i, 4).display_with(&names), "x1 + x2 + x3 + x4");
        }
    }

    #[test]
    fn zero_tuple_gives_zero_tensor() {
        let t = MatrixTuple::new(vec![Mat::zeros(3, 3); 4]).unwrap();
        let l = build_l(&t);
        assert!((0..3).all(|i| (0..4).all(|j| l.entry(i, j).is_zero())));
    }

    #[test]
    fn evaluation_at_first_basis_vector() {
        let t = catalog::cayley_tuple();
        let l = build_l(&t);
        let e1 = [rat(1), rat(0), rat(0)];
        let ev = l.evaluate(&e1).unwrap();
        for j in 0..4 {
            assert_eq!(ev.column(j), t.get(j).column(0));
        }
    }

    #[test]
    fn minor_counts() {
        let l3 = build_l(&catalog::cayley_tuple());
        let minors = l3.maximal_minors().unwrap();
        assert_eq!(minors.len(), 4);
        assert!(minors.iter().all(|p| p.degree() == Some(3) && p.is_homogeneous()));
        let l4 = build_l(&catalog::sylvester_tuple(4));
        let minors = l4.maximal_minors().unwrap();
        assert_eq!(minors.len(), 5);
        assert!(minors.iter().all(|p| p.degree() == Some(4)));
        let tall = l4.hilbert_burch_swap();
        assert!(LinearMatrix::zeros(4, 3, 2).maximal_minors().is_err());
        assert_eq!(tall.rows(), 4);
    }

    #[test]
    fn minors_vanish_at_quadrilateral_point() {
        let l = build_l(&catalog::standard_quadrilateral_tuple());
        let x = [rat(1), rat(-1), rat(0)];
        for p in l.maximal_minors().unwrap() {
            assert!(p.eval(&x).is_zero());
        }
    }

    #[test]
    fn cayley_pencil_matches_display() {
        let u = pencil(&catalog::cayley_tuple());
        let names = crate::pencil::var_names("u", 4);
        let shown: Vec<Vec<String>> = u
            .entries()
            .iter()
            .map(|r| r.iter().map(|p| p.display_with(&names)).collect())
            .collect();
        assert_eq!(
            shown,
            vec![
                vec!["u1 + u4", "u4", "u4"],
                vec!["u4", "u2 + u4", "u4"],
                vec!["u4", "u4", "u3 + u4"],
            ]
        );
    }

    #[test]
    fn swap_is_an_involution() {
        let l = build_l(&catalog::sylvester_tuple(4));
        assert_eq!(l.hilbert_burch_swap().hilbert_burch_swap(), l);
    }

    #[test]
    fn sylvester_pencil_is_diagonal_plus_ones() {
        let u = pencil(&catalog::sylvester_tuple(4));
        let names = crate::pencil::var_names("u", 5);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    format!("u{} + u5", i + 1)
                } else {
                    "u5".into()
                };
                assert_eq!(u.entry(i, j).display_with(&names), want);
            }
        }
    }

    #[test]
    fn determinants_of_pencils() {
        let d = det_pencil(&catalog::cayley_tuple());
        assert_eq!(d.display_prefixed("u"), "u1*u2*u3 + u1*u2*u4 + u1*u3*u4 + u2*u3*u4");
        let d = det_pencil(&catalog::second_symmetroid_tuple());
        assert_eq!(
            d.display_prefixed("u"),
            "-u1*u2*u3 + u1*u4^2 + u2*u4^2 + u3*u4^2 + 2*u4^3"
        );
        let id = MatrixTuple::new(vec![Mat::identity(3)]).unwrap();
        assert_eq!(det_pencil(&id).display_prefixed("u"), "u1^3");
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn adjugate_identity() {
        // U · adj(U) = det(U) · I as polynomial matrices
        let u = pencil(&catalog::cayley_tuple());
        let adj = u.adjugate().unwrap();
        let det = u.det().unwrap();
        let e = u.entries();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = MultiPoly::zero(4);
                for k in 0..3 {
                    acc = &acc + &(&e[i][k] * &adj[k][j]);
                }
                let want = if i == j { det.clone() } else { MultiPoly::zero(4) };
                assert_eq!(acc, want);
            }
        }
        assert!(!det.is_zero() && !Rational::is_zero(&det.coefficient(&[1, 1, 1, 0])));
    }
}
