//! Phase retrieval: `x ↦ (xᵀA_i x)_i` is injective up to sign exactly when
//! the degeneracy locus has no real point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exactlin::{numeric_rank, to_f64, Rational, Subspace};
use crate::locus::univariate::{interpolate, roots, sample_points, to_scaled_f64};
use crate::locus::{
    compute_locus, minor_residual, span_tuple, structured_locus, ComponentLabel, Geometry, LocusComponent, LocusResult,
    RankOneFamily, SpanCoefficients, DEDUP_TOL,
};
use crate::par::trial_rng;
use crate::pencil::MatrixTuple;
use crate::point::ProjPoint;

/// Relative singular-value threshold of the numeric injectivity test.
pub const INJECTIVITY_TOL: f64 = 1e-8;
/// Residual accepted for a numeric real witness.
const WITNESS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrMethod {
    ExactLocus,
    NumericLocus,
    CodimensionArgument,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PRVerdict {
    pub holds: bool,
    /// Real components of the locus (points or exact subspaces).
    pub witnesses: Vec<LocusComponent>,
    pub method: PrMethod,
}

impl PRVerdict {
    /// One real point on each witness component.
    pub fn witness_points(&self) -> Vec<ProjPoint> {
        self.witnesses.iter().map(representative).collect()
    }
}

/// A real point of a real component.
pub fn representative(c: &LocusComponent) -> ProjPoint {
    match &c.geometry {
        Geometry::Point(p) => p.clone(),
        Geometry::Subspace(s) => ProjPoint::Exact(s.sample_point()),
    }
}

/// Whether `x ↦ (xᵀA_i x)_i` is locally injective at `x`, that is whether
/// `A_1 x, ..., A_r x` span the whole space. The criterion is stated for
/// symmetric tuples; exact points are tested exactly, numeric points by
/// numeric rank of the real parts.
pub fn injective_at(t: &MatrixTuple, x: &ProjPoint) -> Result<bool> {
    if x.len() != t.m() {
        return Err(Error::dims(format!("point of length {} for m = {}", x.len(), t.m())));
    }
    if x.is_zero() {
        return Err(Error::input("the zero vector is not a projective point"));
    }
    match x {
        ProjPoint::Exact(v) => Ok(t.evaluate_at(v)?.rank() == t.m()),
        ProjPoint::Numeric(_) => {
            let v = x.normalized();
            let m = t.m();
            let mut l = DMatrix::<f64>::zeros(m, t.r());
            for (j, a) in t.to_f64().iter().enumerate() {
                let n = a.norm();
                let s = if n > 0.0 { 1.0 / n } else { 1.0 };
                for i in 0..m {
                    l[(i, j)] = (0..m).map(|k| a[(i, k)] * s * v[k].re).sum();
                }
            }
            Ok(numeric_rank(&l, INJECTIVITY_TOL)? == m)
        }
    }
}

/// The measurement vector `(xᵀA_1x, ..., xᵀA_rx)`.
pub fn measurement(t: &MatrixTuple, x: &[Rational]) -> Result<Vec<Rational>> {
    t.matrices()
        .iter()
        .map(|a| {
            let ax = a.mul_vec(x)?;
            Ok(x.iter().zip(&ax).fold(Rational::zero(), |acc, (p, q)| acc + p * q))
        })
        .collect()
}

fn verdict(witnesses: Vec<LocusComponent>, method: PrMethod) -> PRVerdict {
    PRVerdict {
        holds: witnesses.is_empty(),
        witnesses,
        method,
    }
}

fn real_components(r: &LocusResult) -> Vec<LocusComponent> {
    r.components.iter().filter(|c| c.real).cloned().collect()
}

/// Decides the phase retrieval property of a tuple. Tuples of `m + 1`
/// rank-one matrices use the exact locus, plane tuples the numeric solver,
/// and tuples with `r <= m` a dimension count (with an explicit witness).
pub fn phase_retrieval_test(t: &MatrixTuple, tol: f64) -> Result<PRVerdict> {
    let (m, r) = (t.m(), t.r());
    if r < m {
        // rank [A_1 x ... A_r x] <= r < m everywhere
        let w = LocusComponent::exact_subspace(
            ComponentLabel::Index(1),
            Subspace::from_vectors(m, &[catalog::unit(m, 0)])?,
        );
        return Ok(verdict(vec![w], PrMethod::CodimensionArgument));
    }
    if r == m {
        return square_witness(t).map(|w| verdict(vec![w], PrMethod::CodimensionArgument));
    }
    if let Some(f) = RankOneFamily::try_from_tuple(t) {
        if f.is_generic() {
            return Ok(verdict(real_components(&structured_locus(&f)?), PrMethod::ExactLocus));
        }
    }
    if m != 3 {
        return Err(Error::Unsupported(format!(
            "phase retrieval for m = {m} needs the tuple as a rank-one span"
        )));
    }
    let locus = compute_locus(t, tol)?;
    let method = if locus.is_exact() && !locus.is_empty() {
        PrMethod::ExactLocus
    } else {
        PrMethod::NumericLocus
    };
    Ok(verdict(real_components(&locus), method))
}

/// Exact path for a tuple given as a rank-one span: the locus is the union of
/// the real subspaces `ker E_i ∩ ker E_j`.
pub fn phase_retrieval_test_span(f: &RankOneFamily, c: &SpanCoefficients) -> Result<PRVerdict> {
    span_tuple(f, c)?;
    Ok(verdict(real_components(&structured_locus(f)?), PrMethod::ExactLocus))
}

/// For `r = m` the locus is the hypersurface `det [A_1 x ... A_m x] = 0`. A
/// random line meets it in `m` points counted with multiplicity; for odd `m`
/// one of them is real. Even `m` only succeeds when a sampled point happens
/// to lie on the hypersurface.
fn square_witness(t: &MatrixTuple) -> Result<LocusComponent> {
    let m = t.m();
    let det_at = |x: &[Rational]| -> Result<Rational> { t.evaluate_at(x)?.det() };
    let mut rng = trial_rng(0x11e5, 0);
    for _ in 0..16 {
        let p = crate::locus::random_int_vector(&mut rng, m, 50);
        let q = crate::locus::random_int_vector(&mut rng, m, 50);
        if q.iter().all(Zero::is_zero) || p.iter().all(Zero::is_zero) {
            continue;
        }
        // the leading coefficient of det(p + s q) is det(q)
        for v in [&p, &q] {
            if det_at(v)?.is_zero() {
                return Ok(exact_point(v.clone()));
            }
        }
        if m.is_multiple_of(2) {
            continue;
        }
        // det(p + s q) as a polynomial in s
        let xs = sample_points(m + 1);
        let ys = xs
            .iter()
            .map(|s| {
                let x: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| a + s * b).collect();
                det_at(&x)
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = interpolate(&xs, &ys);
        let scaled: Vec<Complex64> = to_scaled_f64(&coeffs).iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let Some(s) = roots(&scaled)
            .into_iter()
            .min_by(|a, b| a.im.abs().total_cmp(&b.im.abs()))
        else {
            continue;
        };
        let x: Vec<Complex64> = p
            .iter()
            .zip(&q)
            .map(|(a, b)| Complex64::new(to_f64(a) + s.re * to_f64(b), 0.0))
            .collect();
        let residual = minor_residual(t, &x);
        if residual < WITNESS_TOL {
            return Ok(LocusComponent {
                label: ComponentLabel::Index(1),
                geometry: Geometry::Point(ProjPoint::Numeric(x)),
                projective_dim: 0,
                exact: false,
                residual,
                multiplicity: 1,
                real: true,
            });
        }
    }
    Err(Error::Unsupported(format!(
        "no real point found on the determinantal hypersurface for m = r = {m}"
    )))
}

fn exact_point(v: Vec<Rational>) -> LocusComponent {
    LocusComponent {
        label: ComponentLabel::Index(1),
        geometry: Geometry::Point(ProjPoint::Exact(v)),
        projective_dim: 0,
        exact: true,
        residual: 0.0,
        multiplicity: 1,
        real: true,
    }
}

/// Random real unit vectors in `R^m`.
pub fn random_unit_vectors(m: usize, count: usize, seed: u64) -> Vec<ProjPoint> {
    use rand::Rng;
    let mut rng = trial_rng(seed, 0);
    (0..count)
        .map(|_| loop {
            let v: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > DEDUP_TOL {
                break ProjPoint::real(&v.iter().map(|x| x / n).collect::<Vec<_>>());
            }
        })
        .collect()
}

/// Integer vector with entries in `[-bound, bound]`, never zero.
pub fn random_nonzero_vector<R: rand::Rng>(rng: &mut R, m: usize, bound: i64) -> Vec<Rational> {
    loop {
        let v = crate::locus::random_int_vector(rng, m, bound);
        if !v.iter().all(Zero::is_zero) {
            return v;
        }
    }
}
