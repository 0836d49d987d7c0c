use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, lcm_denominator, rat, to_f64, Rational, RationalRepr};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rank: usize,
    pub kernel: Subspace,
    pub pivots: Vec<usize>,
    pub reduced: Mat,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("ragged rows"));
        }
        Mat::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        Mat::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::dims("columns of different lengths"));
        }
        Ok(Mat::from_fn(n, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// The rank-one matrix `u vᵀ`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Mat::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn scale(&self, s: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Mat, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Mat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dims(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::dims("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::dims("hstack row mismatch"));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    /// Integer rows obtained by clearing each row's denominators. Row scaling
    /// by nonzero integers preserves rank; `scale` is the product of the
    /// multipliers, so `det(self) = det(ints) / scale`.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let l = lcm_denominator(self.row(i));
                scale *= &l;
                let lr = Rational::from_integer(l);
                self.row(i).iter().map(|v| (v * &lr).to_integer()).collect()
            })
            .collect();
        (rows, scale)
    }

    /// Rank by fraction-free (Bareiss) elimination on integers.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss(&mut a, self.cols).0
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::dims("determinant of a non-square matrix"));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scale) = self.integer_rows();
        let (rank, sign) = bareiss(&mut a, self.cols);
        if rank < self.rows {
            return Ok(Rational::zero());
        }
        let d = a[self.rows - 1][self.cols - 1].clone() * sign;
        Ok(Rational::new(d, scale))
    }

    /// Reduced row echelon form over the rationals, with the kernel.
    pub fn rref(&self) -> Rref {
        let (m, pivots) = self.reduce();
        let rank = pivots.len();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); m.cols];
                v[f] = Rational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(k, f)].clone();
                }
                v
            })
            .collect();
        let kernel = Subspace::from_vectors(m.cols, &basis).expect("kernel vectors have ambient length");
        Rref {
            rank,
            kernel,
            pivots,
            reduced: m,
        }
    }

    /// Gauss-Jordan elimination: reduced form and pivot columns.
    fn reduce(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let v = &m[(i, j)] - &f * &m[(r, j)];
                            m[(i, j)] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn kernel(&self) -> Subspace {
        self.rref().kernel
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_canonical(&self) -> Mat {
        let (reduced, pivots) = self.reduce();
        Mat::from_fn(pivots.len(), self.cols, |i, j| reduced[(i, j)].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::dims("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n))?.rref();
        if aug.pivots.iter().take(n).copied().ne(0..n) || aug.pivots.len() < n {
            return Err(Error::Singular(format!("{n}x{n} matrix is not invertible")));
        }
        Ok(Mat::from_fn(n, n, |i, j| aug.reduced[(i, n + j)].clone()))
    }

    /// One exact solution of `self · x = b`, or an error when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(Error::dims("right-hand side length"));
        }
        let aug = self.hstack(&Mat::column_vector(b))?.rref();
        if aug.pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent {
                residual: f64::INFINITY,
            });
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &p) in aug.pivots.iter().enumerate() {
            x[p] = aug.reduced[(k, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// In-place Bareiss elimination with row pivoting; returns rank and the
/// sign of the row permutation. When the matrix is square and nonsingular the
/// last pivot is the determinant (times the sign).
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, sign)
}

/// Exact cross product in three dimensions.
pub fn cross3(u: &[Rational], v: &[Rational]) -> Result<[Rational; 3]> {
    if u.len() != 3 || v.len() != 3 {
        return Err(Error::dims("cross product needs 3-vectors"));
    }
    Ok([
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ])
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(&self[(i, j)]))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<RationalRepr>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(RationalRepr::into_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Mat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::frac;

    #[test]
    fn identity_rank_and_kernel() {
        let rr = Mat::identity(3).rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.kernel.dim(), 0);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one_all_ones() {
        let e = Mat::from_i64(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        let rr = e.rref();
        assert_eq!(rr.rank, 1);
        let expected =
            Subspace::from_vectors(3, &[vec![rat(1), rat(-1), rat(0)], vec![rat(1), rat(0), rat(-1)]]).unwrap();
        assert_eq!(rr.kernel, expected);
        for v in rr.kernel.basis_vectors() {
            assert!(e.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn printed_fiber_matrix_has_rank_three() {
        let q = Mat::from_i64(&[
            [90, 64, -90, -64, 0, 0],
            [-6, -12, 0, 0, 6, 12],
            [0, 0, 68, 37, -68, -37],
        ]);
        assert_eq!(q.rref().rank, 3);
        assert_eq!(q.rank(), 3);
    }

    #[test]
    fn determinant_matches_hand_value() {
        let a = Mat::from_i64(&[[3, 5, 6], [7, 2, 4], [5, 2, 8]]);
        // 3(16-8) - 5(56-20) + 6(14-10)
        assert_eq!(a.det().unwrap(), rat(24 - 180 + 24));
        let h = Mat::from_fn(3, 3, |i, j| frac(1, (i + j + 1) as i64));
        assert_eq!(h.det().unwrap(), frac(1, 2160));
        assert_eq!(Mat::from_i64(&[[1, 2], [2, 4]]).det().unwrap(), rat(0));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Mat::from_i64(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(3));
        assert!(Mat::from_i64(&[[1, 2], [2, 4]]).inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Mat::from_i64(&[[1, 1], [1, -1], [2, 0]]);
        let x = a.solve(&[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(matches!(
            a.solve(&[rat(3), rat(1), rat(5)]),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn cross_products() {
        let e = |i: usize| (0..3).map(|k| rat((k == i) as i64)).collect::<Vec<_>>();
        assert_eq!(cross3(&e(0), &e(1)).unwrap().to_vec(), e(2));
        let u = [rat(1), rat(-1), rat(0)];
        let v = [rat(1), rat(0), rat(-1)];
        assert_eq!(cross3(&u, &v).unwrap().to_vec(), vec![rat(1), rat(1), rat(1)]);
        assert!(cross3(&u, &u).unwrap().iter().all(Zero::is_zero));
        assert!(cross3(&u[..2], &v).is_err());
    }

    #[test]
    fn json_shape() {
        let m = Mat::from_rows(vec![vec![frac(1, 2), rat(-3)], vec![rat(0), frac(5, 7)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","-3"],["0","5/7"]]"#);
        let back: Mat = serde_json::from_str(r#"[["1/2",-3],[0,"5/7"]]"#).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Mat>(r#"[[1,2],[3]]"#).is_err());
    }
}
