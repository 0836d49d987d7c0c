use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::family::{RankOneFamily, SpanCoefficients};
use super::solver::{certify_exact, solve_locus_p2};
use crate::config::{is_quadrilateral, PointConfig, DEFAULT_INCIDENCE_TOL};
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Rational};
use crate::pencil::MatrixTuple;
use crate::point::ProjPoint;

/// Relative residual accepted by the floating decomposition.
pub const DECOMPOSE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    /// `A_i = Σ_j a_{i,j} v_j v_jᵀ` over the rationals.
    Exact {
        family: RankOneFamily,
        coefficients: SpanCoefficients,
    },
    /// Complex vectors `v_j` (complex symmetric `v_j v_jᵀ`) and weights, with
    /// the relative residual of the fit.
    Numeric {
        vectors: Vec<Vec<Complex64>>,
        coefficients: Vec<Vec<Complex64>>,
        residual: f64,
    },
}

impl Decomposition {
    pub fn is_exact(&self) -> bool {
        matches!(self, Decomposition::Exact { .. })
    }

    /// Line normals `v_j` as projective points.
    pub fn vectors(&self) -> Vec<ProjPoint> {
        match self {
            Decomposition::Exact { family, .. } => family.normals().iter().cloned().map(ProjPoint::Exact).collect(),
            Decomposition::Numeric { vectors, .. } => vectors.iter().cloned().map(ProjPoint::Numeric).collect(),
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            Decomposition::Exact { .. } => 0.0,
            Decomposition::Numeric { residual, .. } => *residual,
        }
    }
}

/// Writes a symmetric plane 4-tuple as a span of four rank-one symmetric
/// matrices: the locus is solved, its four lines found, `E_j = v_j v_jᵀ` for
/// the line normals `v_j`, and the weights solved from `A_i = Σ_j a_{i,j}E_j`.
pub fn decompose_symmetric_tuple(t: &MatrixTuple, tol: f64) -> Result<Decomposition> {
    if t.m() != 3 || t.r() != 4 {
        return Err(Error::Unsupported(format!(
            "decomposition needs m = 3 and r = 4, got m = {}, r = {}",
            t.m(),
            t.r()
        )));
    }
    if !t.is_symmetric() {
        return Err(Error::input("decomposition needs symmetric matrices"));
    }
    let locus = certify_exact(t, &solve_locus_p2(t, tol)?);
    if locus.len() != 6 || locus.degree != 6 {
        return Err(Error::SolverFailure(format!(
            "locus has {} distinct points (degree {}), expected 6 distinct",
            locus.len(),
            locus.degree
        )));
    }
    let pc = PointConfig::from_locus(&locus)?;
    let report = is_quadrilateral(&pc, DEFAULT_INCIDENCE_TOL)?;
    if !report.holds() {
        return Err(Error::SolverFailure(
            "locus points are not in quadrilateral position".into(),
        ));
    }
    let exact_lines: Option<Vec<Vec<Rational>>> = report
        .hyperplanes
        .iter()
        .map(|l| match l {
            ProjPoint::Exact(v) => Some(v.clone()),
            ProjPoint::Numeric(_) => None,
        })
        .collect();
    match exact_lines {
        Some(vs) => exact_weights(t, &vs),
        None => numeric_weights(
            t,
            &report.hyperplanes.iter().map(ProjPoint::normalized).collect::<Vec<_>>(),
        ),
    }
}

fn exact_weights(t: &MatrixTuple, vs: &[Vec<Rational>]) -> Result<Decomposition> {
    let family = RankOneFamily::symmetric(vs)?;
    let cols: Vec<Vec<Rational>> = family.matrices().iter().map(|e| e.entries().to_vec()).collect();
    let m = Mat::from_columns(&cols)?;
    let rows = t
        .matrices()
        .iter()
        .map(|a| m.solve(a.entries()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition::Exact {
        family,
        coefficients: SpanCoefficients::new(Mat::from_rows(rows)?),
    })
}

fn numeric_weights(t: &MatrixTuple, vs: &[Vec<Complex64>]) -> Result<Decomposition> {
    let m = DMatrix::<Complex64>::from_fn(9, vs.len(), |k, j| vs[j][k / 3] * vs[j][k % 3]);
    let svd = m.clone().svd(true, true);
    let mut coefficients = Vec::new();
    let mut worst: f64 = 0.0;
    for a in t.to_f64() {
        let b = DVector::<Complex64>::from_fn(9, |k, _| Complex64::new(a[(k / 3, k % 3)], 0.0));
        let x = svd.solve(&b, 1e-14).map_err(|e| Error::SolverFailure(e.to_string()))?;
        let res = (&m * &x - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(res);
        coefficients.push(x.iter().copied().collect());
    }
    if worst > DECOMPOSE_TOL {
        return Err(Error::Inconsistent { residual: worst });
    }
    Ok(Decomposition::Numeric {
        vectors: vs.to_vec(),
        coefficients,
        residual: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::Subspace;
    use crate::locus::{random_coefficients, random_symmetric_family, span_tuple};
    use crate::par::trial_rng;

    fn kernel_set(f: &RankOneFamily) -> Vec<Subspace> {
        let mut k = f.kernels().to_vec();
        k.sort_by_key(|s| format!("{s:?}"));
        k
    }

    #[test]
    fn cayley_recovers_standard_vectors() {
        let d = decompose_symmetric_tuple(&catalog::cayley_tuple(), 1e-8).unwrap();
        let Decomposition::Exact { family, coefficients } = d else {
            panic!("expected an exact decomposition");
        };
        let want = RankOneFamily::symmetric(&catalog::sylvester_vectors(3)).unwrap();
        assert_eq!(kernel_set(&family), kernel_set(&want));
        // each row of the weights has a single nonzero entry
        for i in 0..4 {
            let nz = (0..4)
                .filter(|&j| !num_traits::Zero::is_zero(&coefficients.a[(i, j)]))
                .count();
            assert_eq!(nz, 1);
        }
        let back = span_tuple(&family, &coefficients).unwrap();
        assert_eq!(back, catalog::cayley_tuple());
    }

    #[test]
    fn random_spans_round_trip() {
        let mut rng = trial_rng(21, 0);
        for _ in 0..4 {
            let f = random_symmetric_family(&mut rng, 3, 3);
            let c = random_coefficients(&mut rng, 4, 3);
            let t = span_tuple(&f, &c).unwrap();
            let Decomposition::Exact { family, coefficients } = decompose_symmetric_tuple(&t, 1e-8).unwrap() else {
                panic!("expected exact path");
            };
            assert_eq!(kernel_set(&family), kernel_set(&f));
            assert_eq!(span_tuple(&family, &coefficients).unwrap(), t);
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        let t = MatrixTuple::from_i64(&[
            &[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        ])
        .unwrap();
        assert!(decompose_symmetric_tuple(&t, 1e-8).is_err());
    }
}
