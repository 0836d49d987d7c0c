use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::mat::Mat;
use super::rational::{primitive_integer_vector, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n` stored in canonical form.
///
/// The basis columns are the rows of the reduced row echelon form of any
/// spanning set, so equal subspaces have identical stored bases and compare
/// equal with `==`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    /// Span of the given vectors (dependent or zero vectors are allowed).
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::dims(format!(
                "vector length differs from ambient dimension {ambient_dim}"
            )));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let rows = Mat::from_rows(vectors.to_vec())?;
        let canon = rows.row_space_canonical();
        Ok(Subspace {
            ambient_dim,
            basis: canon.transpose(),
        })
    }

    /// Column space of `m`.
    pub fn column_space(m: &Mat) -> Self {
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Subspace::from_vectors(m.rows(), &cols).expect("columns have the row count")
    }

    /// Common zero set of the linear forms given as rows of `equations`.
    pub fn from_equations(equations: &Mat) -> Self {
        equations.kernel()
    }

    /// The hyperplane `{x : normal · x = 0}`.
    pub fn hyperplane(normal: &[Rational]) -> Self {
        Subspace::from_equations(&Mat::from_rows(vec![normal.to_vec()]).expect("single row"))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Projective dimension; `-1` for the zero subspace.
    pub fn projective_dim(&self) -> isize {
        self.dim() as isize - 1
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    /// Rows spanning the annihilator: linear forms vanishing on the subspace.
    pub fn equations(&self) -> Mat {
        if self.dim() == 0 {
            return Mat::identity(self.ambient_dim);
        }
        let ann = self.basis.transpose().kernel();
        let vs = ann.basis_vectors();
        if vs.is_empty() {
            Mat::zeros(0, self.ambient_dim)
        } else {
            Mat::from_rows(vs).expect("annihilator rows")
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim
            && self
                .equations()
                .mul_vec(v)
                .map(|r| r.iter().all(Zero::is_zero))
                .unwrap_or(false)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dims(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let eqs = self.equations().vstack(&other.equations())?;
        if eqs.rows() == 0 {
            return Ok(Subspace::full(self.ambient_dim));
        }
        Ok(Subspace::from_equations(&eqs))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, &vs)
    }

    /// Image under a square matrix.
    pub fn image_under(&self, g: &Mat) -> Result<Subspace> {
        if g.cols() != self.ambient_dim {
            return Err(Error::dims("transform does not act on this space"));
        }
        let vs = self
            .basis_vectors()
            .iter()
            .map(|v| g.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_vectors(g.rows(), &vs)
    }

    /// For a one-dimensional subspace: the primitive integer representative
    /// with positive leading entry, as rationals.
    pub fn point(&self) -> Option<Vec<Rational>> {
        if self.dim() != 1 {
            return None;
        }
        Some(
            primitive_integer_vector(&self.basis.column(0))
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// Normal vector of a hyperplane (codimension one), primitive integer form.
    pub fn normal(&self) -> Option<Vec<Rational>> {
        if self.dim() + 1 != self.ambient_dim {
            return None;
        }
        let eq = self.equations();
        Some(
            primitive_integer_vector(eq.row(0))
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// A generic-looking point of the subspace: sum of the basis columns
    /// weighted 1, 2, 3, ...
    pub fn sample_point(&self) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.ambient_dim];
        let mut w = Rational::one();
        for v in self.basis_vectors() {
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += &w * b;
            }
            w += Rational::one();
        }
        acc
    }
}
