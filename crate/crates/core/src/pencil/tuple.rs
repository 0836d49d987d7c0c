use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Rational};

/// An ordered tuple of `r` square `m x m` operators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MatrixTuple {
    m: usize,
    matrices: Vec<Mat>,
    #[serde(skip)]
    symmetric: bool,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Mat>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::input("empty matrix tuple"));
        };
        let m = first.rows();
        if m == 0 {
            return Err(Error::input("zero-dimensional operators"));
        }
        for (i, a) in matrices.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(Error::dims(format!(
                    "matrix {} is {}x{}, expected {m}x{m}",
                    i + 1,
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let symmetric = matrices.iter().all(Mat::is_symmetric);
        Ok(MatrixTuple { m, matrices, symmetric })
    }

    pub fn from_i64(mats: &[&[&[i64]]]) -> Result<Self> {
        MatrixTuple::new(mats.iter().map(|rows| Mat::from_i64(rows)).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &Mat {
        &self.matrices[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `Σ u_i A_i` at a concrete `u`.
    pub fn pencil_at(&self, u: &[Rational]) -> Result<Mat> {
        if u.len() != self.r() {
            return Err(Error::dims(format!("{} weights for {} matrices", u.len(), self.r())));
        }
        let mut acc = Mat::zeros(self.m, self.m);
        for (a, w) in self.matrices.iter().zip(u) {
            acc = acc.add(&a.scale(w))?;
        }
        Ok(acc)
    }

    /// The `m x r` matrix `[A_1 x ... A_r x]`.
    pub fn evaluate_at(&self, x: &[Rational]) -> Result<Mat> {
        let cols = self.matrices.iter().map(|a| a.mul_vec(x)).collect::<Result<Vec<_>>>()?;
        Mat::from_columns(&cols)
    }

    /// The tuple `(A_1 G, ..., A_r G)`.
    pub fn right_multiply(&self, g: &Mat) -> Result<MatrixTuple> {
        MatrixTuple::new(self.matrices.iter().map(|a| a.mul(g)).collect::<Result<Vec<_>>>()?)
    }

    pub fn to_f64(&self) -> Vec<nalgebra::DMatrix<f64>> {
        self.matrices.iter().map(Mat::to_f64).collect()
    }
}

#[derive(Deserialize)]
struct TupleRepr {
    matrices: Vec<Mat>,
}

impl<'de> Deserialize<'de> for MatrixTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TupleRepr::deserialize(d)?;
        MatrixTuple::new(r.matrices).map_err(serde::de::Error::custom)
    }
}
