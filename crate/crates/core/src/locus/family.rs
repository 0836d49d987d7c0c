use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{primitive_integer_vector, rat, Mat, Rational, Subspace};
use crate::pencil::{combinations, MatrixTuple};

/// `m + 1` rank-one `m x m` matrices `E_j = w_j k_jᵀ` with cached kernels
/// (`k_j`-perp) and images (`w_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneFamily {
    m: usize,
    matrices: Vec<Mat>,
    normals: Vec<Vec<Rational>>,
    kernels: Vec<Subspace>,
    images: Vec<Vec<Rational>>,
    generic: bool,
}

fn primitive(v: &[Rational]) -> Vec<Rational> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

impl RankOneFamily {
    pub fn new(matrices: Vec<Mat>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::input("empty rank-one family"));
        };
        let m = first.rows();
        if matrices.len() != m + 1 {
            return Err(Error::dims(format!(
                "{} matrices of size {m}; a family needs {}",
                matrices.len(),
                m + 1
            )));
        }
        let mut normals = Vec::new();
        let mut images = Vec::new();
        let mut kernels = Vec::new();
        for (j, e) in matrices.iter().enumerate() {
            if e.rows() != m || e.cols() != m {
                return Err(Error::dims(format!("matrix {} is not {m}x{m}", j + 1)));
            }
            if e.rank() != 1 {
                return Err(Error::input(format!(
                    "matrix {} has rank {}, expected 1",
                    j + 1,
                    e.rank()
                )));
            }
            let row = (0..m)
                .map(|i| e.row(i))
                .find(|r| r.iter().any(|v| !v.is_zero()))
                .expect("rank one");
            let col = (0..m)
                .map(|c| e.column(c))
                .find(|c| c.iter().any(|v| !v.is_zero()))
                .expect("rank one");
            let k = primitive(row);
            kernels.push(Subspace::hyperplane(&k));
            normals.push(k);
            images.push(primitive(&col));
        }
        let generic = first_dependent_subset(&normals).is_none();
        Ok(RankOneFamily {
            m,
            matrices,
            normals,
            kernels,
            images,
            generic,
        })
    }

    /// `E_j = images[j] · normals[j]ᵀ`.
    pub fn from_vectors(images: &[Vec<Rational>], normals: &[Vec<Rational>]) -> Result<Self> {
        if images.len() != normals.len() {
            return Err(Error::dims("image and normal counts differ"));
        }
        RankOneFamily::new(images.iter().zip(normals).map(|(w, k)| Mat::outer(w, k)).collect())
    }

    /// Symmetric family `E_j = v_j v_jᵀ`.
    pub fn symmetric(vectors: &[Vec<Rational>]) -> Result<Self> {
        RankOneFamily::from_vectors(vectors, vectors)
    }

    /// Reads a tuple of `m + 1` rank-one matrices as a family (with identity
    /// coefficients).
    pub fn try_from_tuple(t: &MatrixTuple) -> Option<Self> {
        if t.r() != t.m() + 1 || t.matrices().iter().any(|a| a.rank() != 1) {
            return None;
        }
        RankOneFamily::new(t.matrices().to_vec()).ok()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn kernels(&self) -> &[Subspace] {
        &self.kernels
    }

    /// Primitive integer normals `k_j` with `ker E_j = k_j`-perp.
    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn images(&self) -> &[Vec<Rational>] {
        &self.images
    }

    /// Every `m` of the kernel normals are independent.
    pub fn is_generic(&self) -> bool {
        self.generic
    }

    /// Every `m` of the images are independent as well; only then are the
    /// kernel intersections the whole locus of every span with invertible
    /// coefficients.
    pub fn images_generic(&self) -> bool {
        first_dependent_subset(&self.images).is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrices.iter().all(Mat::is_symmetric)
    }

    pub fn transpose(&self) -> RankOneFamily {
        RankOneFamily::new(self.matrices.iter().map(Mat::transpose).collect()).expect("transpose keeps rank one")
    }

    /// The family `(E_j G)`, whose kernels are `G^{-1} ker E_j`.
    pub fn right_multiply(&self, g: &Mat) -> Result<RankOneFamily> {
        RankOneFamily::new(self.matrices.iter().map(|e| e.mul(g)).collect::<Result<Vec<_>>>()?)
    }

    pub fn check_generic(&self) -> Result<()> {
        match first_dependent_subset(&self.normals) {
            Some(subset) => Err(Error::DegenerateFamily { subset }),
            None => Ok(()),
        }
    }
}

/// First `m`-subset (lexicographic, 1-based) of the normals that is linearly
/// dependent.
fn first_dependent_subset(normals: &[Vec<Rational>]) -> Option<Vec<usize>> {
    let m = normals.first().map_or(0, Vec::len);
    combinations(normals.len(), m).into_iter().find_map(|s| {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| normals[i].clone()).collect();
        let mat = Mat::from_rows(rows).expect("equal lengths");
        (mat.rank() < m).then(|| s.iter().map(|i| i + 1).collect())
    })
}

/// Row `i` holds the weights of `A_i = Σ_j a_{i,j} E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCoefficients {
    pub a: Mat,
}

impl SpanCoefficients {
    pub fn new(a: Mat) -> Self {
        SpanCoefficients { a }
    }

    pub fn identity(n: usize) -> Self {
        SpanCoefficients { a: Mat::identity(n) }
    }

    pub fn is_invertible(&self) -> bool {
        self.a.is_square() && self.a.rank() == self.a.rows()
    }
}

/// `A_i = Σ_j a_{i,j} E_j`.
pub fn span_tuple(f: &RankOneFamily, c: &SpanCoefficients) -> Result<MatrixTuple> {
    if c.a.cols() != f.len() {
        return Err(Error::dims(format!(
            "coefficient matrix has {} columns for {} rank-one matrices",
            c.a.cols(),
            f.len()
        )));
    }
    let m = f.m();
    let mats = (0..c.a.rows())
        .map(|i| {
            let mut acc = Mat::zeros(m, m);
            for (j, e) in f.matrices().iter().enumerate() {
                let w = &c.a[(i, j)];
                if !w.is_zero() {
                    acc = acc.add(&e.scale(w))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(mats)
}

pub fn random_int_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| rat(rng.random_range(-bound..=bound))).collect()
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rat(rng.random_range(-bound..=bound)))
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Mat {
    loop {
        let g = random_int_matrix(rng, n, n, bound);
        if g.rank() == n {
            return g;
        }
    }
}

/// Random generic symmetric family `v_j v_jᵀ` with integer `v_j`.
pub fn random_symmetric_family<R: Rng>(rng: &mut R, m: usize, bound: i64) -> RankOneFamily {
    loop {
        let vs: Vec<Vec<Rational>> = (0..=m).map(|_| random_int_vector(rng, m, bound)).collect();
        if vs.iter().any(|v| v.iter().all(Zero::is_zero)) {
            continue;
        }
        if let Ok(f) = RankOneFamily::symmetric(&vs) {
            if f.is_generic() {
                return f;
            }
        }
    }
}

/// Random generic family `w_j k_jᵀ` with independent integer images and normals.
pub fn random_family<R: Rng>(rng: &mut R, m: usize, bound: i64) -> RankOneFamily {
    loop {
        let ws: Vec<Vec<Rational>> = (0..=m).map(|_| random_int_vector(rng, m, bound)).collect();
        let ks: Vec<Vec<Rational>> = (0..=m).map(|_| random_int_vector(rng, m, bound)).collect();
        let zero = |v: &Vec<Rational>| v.iter().all(Zero::is_zero);
        if ws.iter().any(zero) || ks.iter().any(zero) {
            continue;
        }
        if let Ok(f) = RankOneFamily::from_vectors(&ws, &ks) {
            if f.is_generic() && f.images_generic() {
                return f;
            }
        }
    }
}

/// `r` random symmetric `m x m` integer matrices.
pub fn random_symmetric_tuple<R: Rng>(rng: &mut R, m: usize, r: usize, bound: i64) -> MatrixTuple {
    let mats = (0..r)
        .map(|_| {
            let mut a = Mat::zeros(m, m);
            for i in 0..m {
                for j in i..m {
                    let v = rat(rng.random_range(-bound..=bound));
                    a[(i, j)] = v.clone();
                    a[(j, i)] = v;
                }
            }
            a
        })
        .collect();
    MatrixTuple::new(mats).expect("square matrices of one size")
}

pub fn random_coefficients<R: Rng>(rng: &mut R, n: usize, bound: i64) -> SpanCoefficients {
    SpanCoefficients::new(random_invertible(rng, n, bound))
}
