//! Dimensions of parametrized varieties from exact Jacobian ranks at random
//! integer points.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exactlin::{rat, to_f64, Mat, Rational};
use crate::locus::random_symmetric_tuple;
use crate::par::{map_trials, trial_rng, Execution};
use crate::pencil::{pencil, MatrixTuple, MultiPoly};

/// Entry bound of the random evaluation points.
pub const SAMPLE_BOUND: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parametrization {
    /// Coefficients of `det(Σ u_i A_i)` as functions of `r` symmetric
    /// `m x m` matrices.
    SymmetroidCoeffs { m: usize, r: usize },
    /// `A_i = Σ_j a_{i,j} w_j k_jᵀ` with `a_{1,j} = 1` and `k_j` scaled to
    /// first coordinate one.
    RankOneSpan { m: usize },
    /// As [`Parametrization::RankOneSpan`] with the `k_j` fixed.
    RankOneSpanFixedKernels { m: usize, normals: Vec<Vec<Rational>> },
    /// `A_i = Σ_j a_{i,j} v_j v_jᵀ` with `a_{1,j} = 1`.
    SymmetricSpan { m: usize },
}

impl Parametrization {
    /// Fixed kernels at the Sylvester normals `e_1, ..., e_m, (1, ..., 1)`.
    pub fn fixed_kernels(m: usize) -> Self {
        Parametrization::RankOneSpanFixedKernels {
            m,
            normals: catalog::sylvester_vectors(m),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Parametrization::SymmetroidCoeffs { m, .. }
            | Parametrization::RankOneSpan { m }
            | Parametrization::RankOneSpanFixedKernels { m, .. }
            | Parametrization::SymmetricSpan { m } => *m,
        }
    }

    pub fn domain_dim(&self) -> usize {
        let m = self.m();
        match self {
            Parametrization::SymmetroidCoeffs { r, .. } => r * m * (m + 1) / 2,
            Parametrization::RankOneSpan { .. } => (m + 1) * (3 * m - 1),
            Parametrization::RankOneSpanFixedKernels { .. } | Parametrization::SymmetricSpan { .. } => 2 * m * (m + 1),
        }
    }

    pub fn codomain_dim(&self) -> usize {
        let m = self.m();
        match self {
            Parametrization::SymmetroidCoeffs { r, .. } => binomial(m + r - 1, m),
            _ => (m + 1) * m * m,
        }
    }

    fn validate(&self) -> Result<()> {
        let m = self.m();
        if m == 0 {
            return Err(Error::input("m must be positive"));
        }
        match self {
            Parametrization::SymmetroidCoeffs { r, .. } if *r == 0 => Err(Error::input("r must be positive")),
            Parametrization::RankOneSpanFixedKernels { normals, .. } => {
                if normals.len() != m + 1 || normals.iter().any(|k| k.len() != m) {
                    return Err(Error::dims(format!("expected {} normals of length {m}", m + 1)));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Exact Jacobian at a random integer point.
    pub fn jacobian_at<R: Rng>(&self, rng: &mut R) -> Result<Mat> {
        self.validate()?;
        match self {
            Parametrization::SymmetroidCoeffs { m, r } => {
                symmetroid_jacobian(&random_symmetric_tuple(rng, *m, *r, SAMPLE_BOUND))
            }
            Parametrization::RankOneSpan { m } => {
                let mut p = SpanPoint::random(rng, *m);
                for k in &mut p.normals {
                    k[0] = rat(1);
                }
                Ok(p.jacobian(SpanParams::Free))
            }
            Parametrization::RankOneSpanFixedKernels { m, normals } => {
                let mut p = SpanPoint::random(rng, *m);
                p.normals = normals.clone();
                Ok(p.jacobian(SpanParams::FixedKernels))
            }
            Parametrization::SymmetricSpan { m } => {
                let mut p = SpanPoint::random(rng, *m);
                p.normals = p.images.clone();
                Ok(p.jacobian(SpanParams::Symmetric))
            }
        }
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parametrization::SymmetroidCoeffs { m, r } => write!(f, "SymmetroidCoeffs({m},{r})"),
            Parametrization::RankOneSpan { m } => write!(f, "RankOneSpan({m})"),
            Parametrization::RankOneSpanFixedKernels { m, .. } => write!(f, "RankOneSpanFixedKernels({m})"),
            Parametrization::SymmetricSpan { m } => write!(f, "SymmetricSpan({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianReport {
    pub kind: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub ranks_per_trial: Vec<usize>,
    pub rank: usize,
    /// `rank - 1`: every image is a cone, so this is the dimension of its
    /// projectivization.
    pub projective_dim: usize,
    pub seed: u64,
}

pub fn jacobian_rank(p: &Parametrization, trials: usize, seed: u64) -> Result<JacobianReport> {
    jacobian_rank_with(p, trials, seed, Execution::default())
}

/// Exact Jacobian rank at `trials` random integer points in
/// `[-SAMPLE_BOUND, SAMPLE_BOUND]`; the maximum is reported along with every
/// per-trial rank.
pub fn jacobian_rank_with(p: &Parametrization, trials: usize, seed: u64, exec: Execution) -> Result<JacobianReport> {
    if trials == 0 {
        return Err(Error::input("at least one trial is needed"));
    }
    p.validate()?;
    let ranks = map_trials(trials, exec, |k| {
        let mut rng = trial_rng(seed, k);
        p.jacobian_at(&mut rng).map(|j| j.rank())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let rank = ranks.iter().copied().max().unwrap_or(0);
    Ok(JacobianReport {
        kind: p.to_string(),
        domain_dim: p.domain_dim(),
        codomain_dim: p.codomain_dim(),
        ranks_per_trial: ranks,
        rank,
        projective_dim: rank.saturating_sub(1),
        seed,
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Symmetric parameter positions `(k, p, q)` with `p <= q`.
pub fn symmetric_parameters(m: usize, r: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(r * m * (m + 1) / 2);
    for k in 0..r {
        for p in 0..m {
            for q in p..m {
                out.push((k, p, q));
            }
        }
    }
    out
}

/// Jacobian of the determinant coefficients at a symmetric tuple: the
/// derivative along `(A_k)_{pq}` is `u_k (adj_{qp} + adj_{pq})`, or
/// `u_k adj_{pp}` on the diagonal.
pub fn symmetroid_jacobian(t: &MatrixTuple) -> Result<Mat> {
    let (m, r) = (t.m(), t.r());
    let adj = pencil(t).adjugate()?;
    let mons = monomials(r, m as u32);
    let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let params = symmetric_parameters(m, r);
    let mut jac = Mat::zeros(mons.len(), params.len());
    for (col, &(k, p, q)) in params.iter().enumerate() {
        let d = if p == q {
            adj[p][p].clone()
        } else {
            &adj[q][p] + &adj[p][q]
        };
        let d = &d * &MultiPoly::var(r, k);
        for (e, c) in d.terms() {
            jac[(index[&e.0], col)] = c.clone();
        }
    }
    Ok(jac)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SpanParams {
    Free,
    FixedKernels,
    Symmetric,
}

/// A point of the span parametrizations: weights, images `w_j` and normals
/// `k_j`, with `A_i = Σ_j a_{i,j} w_j k_jᵀ`.
struct SpanPoint {
    m: usize,
    weights: Vec<Vec<Rational>>,
    images: Vec<Vec<Rational>>,
    normals: Vec<Vec<Rational>>,
}

impl SpanPoint {
    fn random<R: Rng>(rng: &mut R, m: usize) -> Self {
        let mut draw = |n| -> Vec<Rational> {
            (0..n)
                .map(|_| rat(rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
                .collect()
        };
        let mut weights: Vec<Vec<Rational>> = (0..=m).map(|_| draw(m + 1)).collect();
        weights[0] = vec![rat(1); m + 1];
        let images = (0..=m).map(|_| draw(m)).collect();
        let normals = (0..=m).map(|_| draw(m)).collect();
        SpanPoint {
            m,
            weights,
            images,
            normals,
        }
    }

    /// Rows index `(i, p, q)` of the output entries `(A_i)_{pq}`; columns
    /// are the free weights `a_{i,j}` (`i >= 2`), then the images, then the
    /// free normal coordinates.
    fn jacobian(&self, kind: SpanParams) -> Mat {
        let m = self.m;
        let n = m + 1;
        let row = |i: usize, p: usize, q: usize| (i * m + p) * m + q;
        let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
        for i in 1..n {
            for j in 0..n {
                let mut c = Vec::new();
                for p in 0..m {
                    for q in 0..m {
                        c.push((row(i, p, q), &self.images[j][p] * &self.normals[j][q]));
                    }
                }
                cols.push(c);
            }
        }
        for j in 0..n {
            for s in 0..m {
                let mut c = Vec::new();
                for i in 0..n {
                    let a = &self.weights[i][j];
                    for q in 0..m {
                        // d/dw_j[s] of a w_j kᵀ, plus the k_j = w_j term when symmetric
                        c.push((row(i, s, q), a * &self.normals[j][q]));
                        if kind == SpanParams::Symmetric {
                            c.push((row(i, q, s), a * &self.images[j][q]));
                        }
                    }
                }
                cols.push(c);
            }
        }
        if kind == SpanParams::Free {
            for j in 0..n {
                for s in 1..m {
                    let mut c = Vec::new();
                    for i in 0..n {
                        let a = &self.weights[i][j];
                        for p in 0..m {
                            c.push((row(i, p, s), a * &self.images[j][p]));
                        }
                    }
                    cols.push(c);
                }
            }
        }
        let mut jac = Mat::zeros(n * m * m, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c {
                let cur = jac[(i, j)].clone();
                jac[(i, j)] = cur + v;
            }
        }
        jac
    }
}

/// Coefficients of `det(Σ u_i A_i)` in floating point by Leibniz expansion,
/// in the monomial order of [`monomials`].
pub fn det_coefficients_f64(mats: &[Vec<Vec<f64>>]) -> Vec<f64> {
    let r = mats.len();
    let m = mats[0].len();
    let mons = monomials(r, m as u32);
    let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut out = vec![0.0; mons.len()];
    for (perm, sign) in permutations(m) {
        // expand Π_i Σ_k u_k A_k[i][perm[i]]
        let mut choice = vec![0usize; m];
        loop {
            let mut c = sign;
            let mut e = vec![0u32; r];
            for (i, &k) in choice.iter().enumerate() {
                c *= mats[k][i][perm[i]];
                e[k] += 1;
            }
            out[index[&e]] += c;
            let mut pos = 0;
            while pos < m {
                choice[pos] += 1;
                if choice[pos] < r {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    out
}

fn permutations(m: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            (p, sign)
        })
        .collect()
}

/// Largest relative deviation, over `points` random symmetric tuples, between
/// the exact Jacobian of the determinant coefficients and central finite
/// differences with step `h` of the floating-point coefficient map.
pub fn finite_difference_check(m: usize, r: usize, points: usize, seed: u64, h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..points {
        let mut rng = trial_rng(seed, k);
        let t = random_symmetric_tuple(&mut rng, m, r, SAMPLE_BOUND);
        let exact = symmetroid_jacobian(&t)?;
        let base: Vec<Vec<Vec<f64>>> = t
            .matrices()
            .iter()
            .map(|a| (0..m).map(|i| (0..m).map(|j| to_f64(&a[(i, j)])).collect()).collect())
            .collect();
        let mut diff2 = 0.0;
        let mut norm2 = 0.0;
        for (col, &(kk, p, q)) in symmetric_parameters(m, r).iter().enumerate() {
            let shifted = |s: f64| {
                let mut mats = base.clone();
                mats[kk][p][q] += s;
                if p != q {
                    mats[kk][q][p] += s;
                }
                det_coefficients_f64(&mats)
            };
            let (plus, minus) = (shifted(h), shifted(-h));
            for row in 0..exact.rows() {
                let fd = (plus[row] - minus[row]) / (2.0 * h);
                let ex = to_f64(&exact[(row, col)]);
                diff2 += (fd - ex).powi(2);
                norm2 += ex * ex;
            }
        }
        if norm2 > 0.0 {
            worst = worst.max((diff2 / norm2).sqrt());
        } else if diff2 > 0.0 {
            worst = f64::INFINITY;
        }
    }
    Ok(worst)
}

/// Free entries of `r` symmetric `m x m` matrices.
pub fn symmetric_tuple_dim(m: usize, r: usize) -> usize {
    r * m * (m + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let s = Parametrization::SymmetroidCoeffs { m: 3, r: 4 };
        assert_eq!((s.domain_dim(), s.codomain_dim()), (24, 20));
        let s = Parametrization::SymmetroidCoeffs { m: 4, r: 5 };
        assert_eq!((s.domain_dim(), s.codomain_dim()), (50, 70));
        assert_eq!(Parametrization::RankOneSpan { m: 3 }.domain_dim(), 32);
        assert_eq!(Parametrization::RankOneSpan { m: 4 }.domain_dim(), 55);
        for m in 2..7 {
            assert_eq!(Parametrization::RankOneSpan { m }.domain_dim(), 3 * m * m + 2 * m - 1);
            assert_eq!(Parametrization::fixed_kernels(m).domain_dim(), 2 * (m * m + m));
        }
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(5, 4).len(), 70);
    }

    #[test]
    fn jacobian_shapes_match_dimensions() {
        let mut rng = trial_rng(1, 0);
        for p in [
            Parametrization::SymmetroidCoeffs { m: 3, r: 4 },
            Parametrization::RankOneSpan { m: 3 },
            Parametrization::fixed_kernels(3),
            Parametrization::SymmetricSpan { m: 3 },
        ] {
            let j = p.jacobian_at(&mut rng).unwrap();
            assert_eq!((j.rows(), j.cols()), (p.codomain_dim(), p.domain_dim()), "{p}");
        }
    }

    #[test]
    fn small_ranks() {
        let r = jacobian_rank(&Parametrization::SymmetroidCoeffs { m: 3, r: 4 }, 2, 7).unwrap();
        assert_eq!(r.rank, 16);
        assert_eq!(r.projective_dim, 15);
        assert_eq!(r.ranks_per_trial.len(), 2);
        assert_eq!(
            jacobian_rank(&Parametrization::RankOneSpan { m: 3 }, 2, 7)
                .unwrap()
                .rank,
            32
        );
        assert_eq!(
            jacobian_rank(&Parametrization::fixed_kernels(3), 2, 7).unwrap().rank,
            24
        );
        assert!(jacobian_rank(&Parametrization::RankOneSpan { m: 3 }, 0, 7).is_err());
    }

    #[test]
    fn leibniz_matches_exact_determinant() {
        let mut rng = trial_rng(3, 0);
        let t = random_symmetric_tuple(&mut rng, 3, 4, 5);
        let det = crate::pencil::det_pencil(&t);
        let mats: Vec<Vec<Vec<f64>>> = t
            .matrices()
            .iter()
            .map(|a| (0..3).map(|i| (0..3).map(|j| to_f64(&a[(i, j)])).collect()).collect())
            .collect();
        let c = det_coefficients_f64(&mats);
        for (e, v) in monomials(4, 3).iter().zip(&c) {
            assert_eq!(to_f64(&det.coefficient(e)), *v);
        }
    }

    #[test]
    fn finite_differences_agree() {
        let err = finite_difference_check(3, 4, 3, 11, 1e-5).unwrap();
        assert!(err < 1e-6, "{err}");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(2, 3), 0);
    }
}
