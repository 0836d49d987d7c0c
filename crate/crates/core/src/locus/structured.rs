use nalgebra::DMatrix;
use num_complex::Complex64;

use super::family::RankOneFamily;
use super::result::{ComponentLabel, LocusComponent, LocusResult};
use crate::error::{Error, Result};
use crate::exactlin::{normalize_c, numeric_rank_complex, Subspace};
use crate::pencil::{combinations, MatrixTuple, MultiPoly};
use crate::point::ProjPoint;

/// Exact locus of a rank-one span: one component `ker E_i ∩ ker E_j` per
/// pair, independent of the span coefficients.
pub fn structured_locus(f: &RankOneFamily) -> Result<LocusResult> {
    f.check_generic()?;
    let k = f.kernels();
    let components = combinations(f.len(), 2)
        .into_iter()
        .map(|p| {
            let s = k[p[0]].intersect(&k[p[1]])?;
            Ok(LocusComponent::exact_subspace(
                ComponentLabel::Pair([p[0] + 1, p[1] + 1]),
                s,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocusResult::new(f.m(), components))
}

/// Whether `rank [A_1 x ... A_r x] < m`: exact for exact points, numeric rank
/// at relative tolerance `tol` otherwise.
pub fn membership(t: &MatrixTuple, x: &ProjPoint, tol: f64) -> Result<bool> {
    if x.len() != t.m() {
        return Err(Error::dims(format!("point of length {} for m = {}", x.len(), t.m())));
    }
    if x.is_zero() {
        return Err(Error::input("the zero vector is not a projective point"));
    }
    match x {
        ProjPoint::Exact(v) => Ok(t.evaluate_at(v)?.rank() < t.m()),
        ProjPoint::Numeric(v) => {
            let l = evaluate_normalized(t, v);
            Ok(numeric_rank_complex(&l, tol)? < t.m())
        }
    }
}

/// `[Â_1 x̂ ... Â_r x̂]` with `x̂` of unit norm and every `Â_i` of unit
/// Frobenius norm (zero matrices are left alone).
pub fn evaluate_normalized(t: &MatrixTuple, x: &[Complex64]) -> DMatrix<Complex64> {
    let x = normalize_c(x);
    let m = t.m();
    let mut out = DMatrix::<Complex64>::zeros(m, t.r());
    for (j, a) in t.to_f64().iter().enumerate() {
        let n = a.norm();
        let s = if n > 0.0 { 1.0 / n } else { 1.0 };
        for i in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..m {
                acc += x[k] * (a[(i, k)] * s);
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Largest absolute maximal minor of the normalized evaluation at `x`.
pub fn minor_residual(t: &MatrixTuple, x: &[Complex64]) -> f64 {
    let l = evaluate_normalized(t, x);
    let m = t.m();
    combinations(t.r(), m)
        .into_iter()
        .map(|cols| {
            let sub = DMatrix::from_fn(m, m, |i, j| l[(i, cols[j])]);
            sub.determinant().norm()
        })
        .fold(0.0, f64::max)
}

/// Whether every polynomial vanishes identically on the subspace `s`.
pub fn vanishes_on(polys: &[MultiPoly], s: &Subspace) -> Result<bool> {
    let basis = s.basis_vectors();
    let d = basis.len();
    let images: Vec<MultiPoly> = (0..s.ambient_dim())
        .map(|i| {
            let coeffs: Vec<_> = basis.iter().map(|b| b[i].clone()).collect();
            if d == 0 {
                MultiPoly::zero(0)
            } else {
                MultiPoly::linear(&coeffs)
            }
        })
        .collect();
    for p in polys {
        if !p.compose(&images)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
