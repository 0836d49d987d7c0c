//! Determinantal hypersurfaces `det(Σ u_i A_i) = 0`, their nodes, the
//! linear system of plane cubics through six points and the Sylvester
//! derivative identity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::config::PointConfig;
use crate::error::{Error, Result};
use crate::exactlin::{normalize_c, numeric_rank_complex, primitive_integer_vector, rat, Mat, Rational, Subspace};
use crate::locus::{span_tuple, RankOneFamily, SpanCoefficients};
use crate::pencil::{det_pencil, pencil, var_names, LinearMatrix, MatrixTuple, MultiPoly, PolyJson};
use crate::point::ProjPoint;

/// Default relative tolerance for numeric node verification.
pub const NODE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetroidSurface {
    form: MultiPoly,
    pencil: LinearMatrix,
    source: MatrixTuple,
    very_real: bool,
}

impl SymmetroidSurface {
    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn pencil(&self) -> &LinearMatrix {
        &self.pencil
    }

    pub fn source(&self) -> &MatrixTuple {
        &self.source
    }

    pub fn is_very_real(&self) -> bool {
        self.very_real
    }

    pub fn m(&self) -> usize {
        self.source.m()
    }

    pub fn r(&self) -> usize {
        self.source.r()
    }

    /// The form written in `u1, ..., ur`.
    pub fn display(&self) -> String {
        self.form.display_prefixed("u")
    }

    pub fn form_json(&self) -> PolyJson {
        self.form.to_json(&var_names("u", self.r()))
    }
}

pub fn build_symmetroid(t: &MatrixTuple) -> SymmetroidSurface {
    SymmetroidSurface {
        form: det_pencil(t),
        pencil: pencil(t),
        source: t.clone(),
        very_real: t.is_symmetric(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeCertificate {
    pub point: ProjPoint,
    pub pencil_rank: usize,
    /// Largest 2x2 minor of the pencil at the unit point, scaled so the
    /// evaluated matrix has unit Frobenius norm; zero on the exact path.
    pub minor_residual: f64,
    pub certified: bool,
}

/// Evaluates the pencil at `u` and certifies a node when its rank is at most
/// one: exactly for exact points, by numeric rank at `tol` otherwise.
pub fn verify_node(s: &SymmetroidSurface, u: &ProjPoint, tol: f64) -> Result<NodeCertificate> {
    if u.len() != s.r() {
        return Err(Error::dims(format!("point of length {} for r = {}", u.len(), s.r())));
    }
    if u.is_zero() {
        return Err(Error::input("the zero vector is not a projective point"));
    }
    match u {
        ProjPoint::Exact(v) => {
            let rank = s.source.pencil_at(v)?.rank();
            Ok(NodeCertificate {
                point: u.clone(),
                pencil_rank: rank,
                minor_residual: 0.0,
                certified: rank <= 1,
            })
        }
        ProjPoint::Numeric(v) => {
            let p = numeric_pencil(&s.source, &normalize_c(v));
            let rank = numeric_rank_complex(&p, tol)?;
            Ok(NodeCertificate {
                point: u.clone(),
                pencil_rank: rank,
                minor_residual: max_two_minor(&p),
                certified: rank <= 1,
            })
        }
    }
}

fn numeric_pencil(t: &MatrixTuple, u: &[Complex64]) -> DMatrix<Complex64> {
    let m = t.m();
    let mut out = DMatrix::<Complex64>::zeros(m, m);
    for (a, &ui) in t.to_f64().iter().zip(u) {
        out += a.map(|v| Complex64::new(v, 0.0)) * ui;
    }
    let n = out.norm();
    if n > 0.0 {
        out /= Complex64::new(n, 0.0);
    }
    out
}

fn max_two_minor(p: &DMatrix<Complex64>) -> f64 {
    let n = p.nrows();
    let mut best: f64 = 0.0;
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    let d = p[(i, j)] * p[(k, l)] - p[(i, l)] * p[(k, j)];
                    best = best.max(d.norm());
                }
            }
        }
    }
    best
}

/// Nodes of the symmetroid of a rank-one span: the point `u` with `cᵀu = e_j`
/// makes `Σ u_i A_i = E_j`, one for each `j`.
pub fn structured_nodes(f: &RankOneFamily, c: &SpanCoefficients) -> Result<Vec<NodeCertificate>> {
    f.check_generic()?;
    if !c.is_invertible() {
        return Err(Error::Singular("span coefficients are not invertible".into()));
    }
    let t = span_tuple(f, c)?;
    let s = build_symmetroid(&t);
    let ct = c.a.transpose();
    (0..f.len())
        .map(|j| {
            let u = ct.solve(&catalog::unit(f.len(), j))?;
            let u: Vec<Rational> = primitive_integer_vector(&u)
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            verify_node(&s, &ProjPoint::Exact(u), NODE_TOL)
        })
        .collect()
}

/// Exponents of the ten plane cubic monomials, `x³, x²y, ..., z³`.
pub fn cubic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(10);
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            out.push([a, b, 3 - a - b]);
        }
    }
    out
}

/// Coefficient vector of a plane cubic in the basis of [`cubic_monomials`].
pub fn cubic_coefficients(p: &MultiPoly) -> Result<Vec<Rational>> {
    if p.num_vars() != 3 || !(p.is_zero() || (p.is_homogeneous() && p.degree() == Some(3))) {
        return Err(Error::input("expected a ternary cubic form"));
    }
    Ok(cubic_monomials().iter().map(|e| p.coefficient(e)).collect())
}

/// Subspace of the ten-dimensional cubic coefficient space spanned by `polys`.
pub fn cubic_span(polys: &[MultiPoly]) -> Result<Subspace> {
    let vecs = polys.iter().map(cubic_coefficients).collect::<Result<Vec<_>>>()?;
    Subspace::from_vectors(10, &vecs)
}

/// Basis of the cubics through six points, read off the canonical
/// row-reduced kernel of the 6x10 evaluation matrix.
pub fn cubic_system_from_points(pc: &PointConfig) -> Result<Vec<MultiPoly>> {
    if pc.len() != 6 {
        return Err(Error::input(format!("expected 6 points, got {}", pc.len())));
    }
    let pts = pc
        .points()
        .iter()
        .map(|p| {
            if p.len() != 3 {
                return Err(Error::dims("points must lie in the plane"));
            }
            p.as_exact()
                .ok_or_else(|| Error::input("cubic system needs real points"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mons = cubic_monomials();
    let eval = Mat::from_fn(6, 10, |i, k| {
        let e = mons[k];
        let p = &pts[i];
        let mut v = Rational::one();
        for (c, &d) in p.iter().zip(&e) {
            for _ in 0..d {
                v *= c;
            }
        }
        v
    });
    let ker = eval.kernel();
    if ker.dim() != 4 {
        return Err(Error::KernelDimension {
            expected: 4,
            found: ker.dim(),
        });
    }
    let basis = ker.basis().transpose().row_space_canonical();
    Ok((0..basis.rows())
        .map(|i| {
            let mut p = MultiPoly::zero(3);
            for (k, e) in mons.iter().enumerate() {
                p.add_term(e.to_vec(), basis[(i, k)].clone());
            }
            p
        })
        .collect())
}

/// `det Σ u_i v_i v_iᵀ` for `v = e_1, ..., e_m, (1, ..., 1)` against the
/// derivative of `u_1 ⋯ u_{m+1}` along `(1, ..., 1)`.
pub fn sylvester_derivative_check(m: usize) -> Result<bool> {
    if m < 2 {
        return Err(Error::input("the Sylvester check needs m >= 2"));
    }
    let det = det_pencil(&catalog::sylvester_tuple(m));
    let n = m + 1;
    let product = (0..n).fold(MultiPoly::one(n), |acc, i| &acc * &MultiPoly::var(n, i));
    let derivative = product.directional_derivative(&vec![rat(1); n]);
    Ok(!det.is_zero() && det == derivative)
}

/// Images `(f_0(P) : ... : f_3(P))` under a list of forms.
pub fn map_point(forms: &[MultiPoly], p: &[Rational]) -> Vec<Rational> {
    forms.iter().map(|f| f.eval(p)).collect()
}

/// Whether a form vanishes at every point in a list (exactly).
pub fn vanishes_at(form: &MultiPoly, points: &[Vec<Rational>]) -> bool {
    points.iter().all(|p| form.eval(p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locus::{random_coefficients, random_family};
    use crate::par::trial_rng;

    fn ex(v: &[i64]) -> ProjPoint {
        ProjPoint::Exact(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn cayley_form() {
        let s = build_symmetroid(&catalog::cayley_tuple());
        assert!(s.is_very_real());
        assert_eq!(s.display(), "u1*u2*u3 + u1*u2*u4 + u1*u3*u4 + u2*u3*u4");
    }

    #[test]
    fn identity_gives_power() {
        let t = MatrixTuple::new(vec![Mat::identity(3)]).unwrap();
        let s = build_symmetroid(&t);
        assert_eq!(s.form(), &MultiPoly::var(1, 0).pow(3));
    }

    #[test]
    fn cayley_nodes() {
        let s = build_symmetroid(&catalog::cayley_tuple());
        for (u, rank) in [(ex(&[1, 0, 0, 0]), 1), (ex(&[0, 0, 0, 1]), 1), (ex(&[1, 1, 1, 1]), 3)] {
            let c = verify_node(&s, &u, NODE_TOL).unwrap();
            assert_eq!(c.pencil_rank, rank);
            assert_eq!(c.certified, rank <= 1);
        }
        let nodes = structured_nodes(
            &RankOneFamily::try_from_tuple(&catalog::cayley_tuple()).unwrap(),
            &SpanCoefficients::identity(4),
        )
        .unwrap();
        let got: Vec<ProjPoint> = nodes.iter().map(|n| n.point.clone()).collect();
        let want: Vec<ProjPoint> = (0..4).map(|j| ProjPoint::Exact(catalog::unit(4, j))).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn numeric_node() {
        let s = build_symmetroid(&catalog::cayley_tuple());
        let u = ProjPoint::real(&[0.0, 0.0, 2.5, 0.0]);
        let c = verify_node(&s, &u, NODE_TOL).unwrap();
        assert!(c.certified);
        assert!(c.minor_residual < 1e-15);
        assert!(verify_node(&s, &ex(&[0, 0, 0, 0]), NODE_TOL).is_err());
    }

    #[test]
    fn random_span_nodes_lie_on_surface() {
        let mut rng = trial_rng(5, 0);
        let f = random_family(&mut rng, 3, 4);
        let c = random_coefficients(&mut rng, 4, 4);
        let nodes = structured_nodes(&f, &c).unwrap();
        assert_eq!(nodes.len(), 4);
        let s = build_symmetroid(&span_tuple(&f, &c).unwrap());
        for n in &nodes {
            assert!(n.certified);
            assert!(s.form().eval(&n.point.as_exact().unwrap()).is_zero());
        }
        let singular = SpanCoefficients::new(Mat::zeros(4, 4));
        assert!(matches!(structured_nodes(&f, &singular), Err(Error::Singular(_))));
    }

    #[test]
    fn cubic_system_matches_standard_basis() {
        let pc = PointConfig::from_exact(catalog::standard_six_points()).unwrap();
        let sys = cubic_system_from_points(&pc).unwrap();
        assert_eq!(sys.len(), 4);
        let want = cubic_span(&catalog::standard_cubic_basis()).unwrap();
        assert_eq!(cubic_span(&sys).unwrap(), want);
        for p in &sys {
            assert!(vanishes_at(p, &catalog::standard_six_points()));
            for e in [[3, 0, 0], [0, 3, 0], [0, 0, 3]] {
                assert!(p.coefficient(&e).is_zero());
            }
        }
    }

    #[test]
    fn collinear_points_break_cubic_system() {
        // five of the six points on the line z = 0
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [1, 3, 0], [0, 0, 1]]
            .iter()
            .map(|p| p.iter().map(|&v| rat(v)).collect())
            .collect();
        let pc = PointConfig::from_exact(pts).unwrap();
        assert!(matches!(
            cubic_system_from_points(&pc),
            Err(Error::KernelDimension { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn sylvester_identity() {
        for m in 2..=4 {
            assert!(sylvester_derivative_check(m).unwrap(), "m = {m}");
        }
        assert!(sylvester_derivative_check(1).is_err());
    }

    #[test]
    fn cubic_monomial_order() {
        let mons = cubic_monomials();
        assert_eq!(mons.len(), 10);
        assert_eq!(mons[0], [3, 0, 0]);
        assert_eq!(mons[9], [0, 0, 3]);
    }
}
