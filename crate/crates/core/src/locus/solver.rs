//! Numerical degeneracy loci in the projective plane.
//!
//! The `3 x 3` minors of `[A_1 x ... A_r x]` are cubic forms. Two of them are
//! restricted to an affine chart `x = G (X, Y, 1)`, their Sylvester resultant
//! in `Y` is computed exactly by interpolation, and each root is lifted
//! through every root of the first cubic. Lifts are refined by Gauss-Newton
//! on all minors; those on which every minor vanishes and whose last step is
//! shorter than the merge radius are kept. Charts and pairs are tried until
//! the points found reach the expected degree, or, beyond four operators,
//! until one resultant has full degree and separated roots.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

use super::family::random_invertible;
use super::result::{ComponentLabel, Geometry, LocusComponent, LocusResult};
use super::structured::minor_residual;
use super::univariate::{interpolate, roots, sample_points, to_scaled_f64};
use crate::error::{Error, Result};
use crate::exactlin::{angular_distance, phase_normalize, rat, Mat, Rational};
use crate::par::trial_rng;
use crate::pencil::{build_l, MatrixTuple, MultiPoly};
use crate::point::ProjPoint;

/// Points closer than this (sine of the angle) are merged.
pub const DEDUP_TOL: f64 = 1e-6;
/// Imaginary norm below which a phase-normalized point is real.
pub const REAL_TOL: f64 = 1e-7;
/// Denominator bound for rational reconstruction of numeric points.
pub const RECONSTRUCT_DENOM: u64 = 1_000_000;

const FRAME_SEED: u64 = 0x005e_ed0f_c4a7;
const FRAME_ATTEMPTS: usize = 12;
const COMBINATION_ATTEMPTS: usize = 4;
/// Entry bound of random frames; large enough to avoid the special lines
/// of small-integer configurations.
const FRAME_BOUND: i64 = 997;
/// Gauss-Newton iterations when polishing candidates.
const POLISH_STEPS: usize = 8;
/// Steps longer than this end polishing; the candidate is not near a zero.
const POLISH_RADIUS: f64 = 1e-2;
/// Relative singular value below which gradients count as dependent.
const RANK_TOL: f64 = 1e-8;
/// Relative gap below which two resultant roots count as one.
const ROOT_SEPARATION: f64 = 1e-4;

/// Expected degree of a finite locus of four plane operators.
const FOUR_OPERATOR_DEGREE: usize = 6;

struct Candidate {
    point: Vec<Complex64>,
    residual: f64,
    /// Length of the last Newton step.
    step: f64,
    /// Whether the minors cut out the point transversally.
    reduced: bool,
    /// Index of the resultant root the candidate was lifted from.
    root: usize,
}

struct Attempt {
    /// Polished candidates that pass the residual and step tests.
    kept: Vec<Candidate>,
    full_degree: bool,
    /// Distinct resultant roots lift to distinct accepted points.
    separated: bool,
}

impl Attempt {
    fn complete(&self) -> bool {
        self.full_degree && self.separated
    }
}

/// A locus point found so far.
struct Found {
    point: Vec<Complex64>,
    residual: f64,
    multiplicity: usize,
}

/// Polishes raw candidates on the full system of minors and keeps those
/// that are locus points.
struct Judge<'a> {
    t: &'a MatrixTuple,
    tol: f64,
    gradients: Vec<(&'a MultiPoly, Vec<MultiPoly>)>,
}

impl Judge<'_> {
    fn accept(&self, raw: Vec<(usize, Vec<Complex64>)>) -> Vec<Candidate> {
        raw.into_iter()
            .filter_map(|(root, x)| {
                let polished = polish(&self.gradients, &x);
                let residual = minor_residual(self.t, &polished.point);
                (residual < self.tol && polished.step < DEDUP_TOL).then_some(Candidate {
                    residual,
                    root,
                    ..polished
                })
            })
            .collect()
    }
}

/// All isolated points of the locus of a plane tuple (`m = 3`, `r >= 4`),
/// with multiplicities, real flags and minor residuals below `tol`.
pub fn solve_locus_p2(t: &MatrixTuple, tol: f64) -> Result<LocusResult> {
    if t.m() != 3 {
        return Err(Error::Unsupported(format!(
            "the plane solver needs m = 3, got m = {}",
            t.m()
        )));
    }
    if t.r() < 4 {
        return Err(Error::Unsupported(format!(
            "with r = {} < 4 the locus is not zero-dimensional",
            t.r()
        )));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::input(format!("tolerance {tol} outside (0, 1)")));
    }
    let minors = build_l(t).maximal_minors()?;
    if minors.iter().all(MultiPoly::is_zero) {
        return Err(Error::SolverFailure("every maximal minor vanishes identically".into()));
    }

    let judge = Judge {
        t,
        tol,
        gradients: minors
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| (p, (0..3).map(|i| p.derivative(i)).collect()))
            .collect(),
    };
    let target = (t.r() == 4).then_some(FOUR_OPERATOR_DEGREE);
    let mut found: Vec<Found> = Vec::new();
    let mut solved = false;
    'frames: for k in 0..FRAME_ATTEMPTS {
        let mut rng = trial_rng(FRAME_SEED, k);
        let g = random_invertible(&mut rng, 3, FRAME_BOUND);
        for (f, h) in chart_pairs(&minors, &g, &mut rng) {
            let Some(a) = solve_pair(&f, &h, &g, &judge) else {
                continue;
            };
            solved = true;
            let complete = a.complete();
            merge(&mut found, a);
            let degree: usize = found.iter().map(|p| p.multiplicity).sum();
            if target.map_or(complete, |d| degree >= d) {
                break 'frames;
            }
        }
    }
    if !solved {
        return Err(Error::SolverFailure(
            "the resultant vanished identically on every chart".into(),
        ));
    }
    Ok(LocusResult::new(3, components(found)))
}

/// Pairs of cubics on the chart `x = G (X, Y, 1)`: the first two nonzero
/// minors, then random integer combinations of all of them.
fn chart_pairs<R: Rng>(minors: &[MultiPoly], g: &Mat, rng: &mut R) -> Vec<(MultiPoly, MultiPoly)> {
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut p = MultiPoly::linear(&[g[(i, 0)].clone(), g[(i, 1)].clone()]);
            p.add_term(vec![0, 0], g[(i, 2)].clone());
            p
        })
        .collect();
    let affine: Vec<MultiPoly> = minors
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.compose(&images).expect("three images"))
        .collect();
    let mut pairs: Vec<(MultiPoly, MultiPoly)> = Vec::new();
    if affine.len() >= 2 {
        pairs.push((affine[0].clone(), affine[1].clone()));
    }
    for _ in 0..COMBINATION_ATTEMPTS {
        let mut comb = || {
            affine.iter().fold(MultiPoly::zero(2), |acc, p| {
                &acc + &p.scale(&rat(rng.random_range(-9..=9)))
            })
        };
        let f = comb();
        let h = comb();
        pairs.push((f, h));
    }
    pairs
}

/// Common affine zeros of two cubics, mapped back through `g` and judged;
/// `None` when the resultant vanishes identically.
fn solve_pair(f: &MultiPoly, h: &MultiPoly, g: &Mat, judge: &Judge) -> Option<Attempt> {
    let deg = 3usize;
    let xs = sample_points(deg * deg + 1);
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x0| sylvester_det(&y_coeffs_at(f, x0, deg), &y_coeffs_at(h, x0, deg)))
        .collect();
    let res = to_scaled_f64(&interpolate(&xs, &ys));
    if res.is_empty() {
        return None;
    }
    let full_degree = res.len() == deg * deg + 1;
    let xroots = roots(&res.iter().map(|&c| Complex64::new(c, 0.0)).collect::<Vec<_>>());
    let separated = xroots.iter().enumerate().all(|(i, a)| {
        xroots[i + 1..]
            .iter()
            .all(|b| (a - b).norm() > ROOT_SEPARATION * (1.0 + a.norm().max(b.norm())))
    });

    let gf = g.to_f64();
    let raw: Vec<(usize, Vec<Complex64>)> = xroots
        .iter()
        .enumerate()
        .flat_map(|(i, &x0)| lifts(f, h, x0).into_iter().map(move |y0| (i, x0, y0)))
        .filter_map(|(i, x0, y0)| {
            let aff = [x0, y0, Complex64::new(1.0, 0.0)];
            let p: Vec<Complex64> = (0..3).map(|r| (0..3).map(|k| aff[k] * gf[(r, k)]).sum()).collect();
            p.iter().all(|z| z.is_finite()).then_some((i, p))
        })
        .collect();
    let kept = judge.accept(raw);
    // distinct roots must lift to distinct points
    let separated = separated
        && kept.iter().enumerate().all(|(i, p)| {
            kept[i + 1..]
                .iter()
                .all(|q| q.root == p.root || angular_distance(&p.point, &q.point) > DEDUP_TOL)
        });
    Some(Attempt {
        kept,
        full_degree,
        separated,
    })
}

/// Adds the points of an attempt to `found`. Within the attempt a reduced
/// point has multiplicity one and any other point the number of resultant
/// roots lifting to it; across attempts the larger multiplicity wins.
fn merge(found: &mut Vec<Found>, attempt: Attempt) {
    let mut groups: Vec<(Found, Vec<usize>, bool)> = Vec::new();
    for c in attempt.kept {
        match groups
            .iter_mut()
            .find(|(g, _, _)| angular_distance(&g.point, &c.point) < DEDUP_TOL)
        {
            Some((g, roots, reduced)) => {
                if !roots.contains(&c.root) {
                    roots.push(c.root);
                }
                *reduced |= c.reduced;
                if c.residual < g.residual {
                    g.point = c.point;
                    g.residual = c.residual;
                }
            }
            None => groups.push((
                Found {
                    point: c.point,
                    residual: c.residual,
                    multiplicity: 1,
                },
                vec![c.root],
                c.reduced,
            )),
        }
    }
    for (mut g, roots, reduced) in groups {
        g.multiplicity = if reduced { 1 } else { roots.len() };
        match found
            .iter_mut()
            .find(|p| angular_distance(&p.point, &g.point) < DEDUP_TOL)
        {
            Some(p) => {
                p.multiplicity = p.multiplicity.max(g.multiplicity);
                if g.residual < p.residual {
                    p.point = g.point;
                    p.residual = g.residual;
                }
            }
            None => found.push(g),
        }
    }
}

/// Coefficients (in `Y`, constant first, padded to `deg + 1`) of `p(x0, Y)`.
fn y_coeffs_at(p: &MultiPoly, x0: &Rational, deg: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); deg + 1];
    for (mono, coeff) in p.terms() {
        let (a, b) = (mono.0[0], mono.0[1] as usize);
        c[b] += coeff * num_traits::pow(x0.clone(), a as usize);
    }
    c
}

/// Determinant of the Sylvester matrix of two polynomials of formal degree
/// `p.len() - 1` and `q.len() - 1`.
pub fn sylvester_det(p: &[Rational], q: &[Rational]) -> Rational {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let n = dp + dq;
    let s = Mat::from_fn(n, n, |i, j| {
        if i < dq {
            // row i: p shifted by i, highest coefficient first
            j.checked_sub(i)
                .filter(|&k| k <= dp)
                .map_or_else(Rational::zero, |k| p[dp - k].clone())
        } else {
            let i = i - dq;
            j.checked_sub(i)
                .filter(|&k| k <= dq)
                .map_or_else(Rational::zero, |k| q[dq - k].clone())
        }
    });
    s.det().expect("square")
}

/// Coefficients (in `Y`, constant first) of `p(x0, Y)` in floating point.
fn y_coeffs_complex(p: &MultiPoly, x0: Complex64) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::zero(); 4];
    for (mono, c) in p.terms() {
        coeffs[mono.0[1] as usize] += x0.powu(mono.0[0]) * crate::exactlin::to_f64(c);
    }
    coeffs
}

/// Every root `y` of `f(x0, y)`, or of `h(x0, y)` when the former is
/// constant.
fn lifts(f: &MultiPoly, h: &MultiPoly, x0: Complex64) -> Vec<Complex64> {
    let ys = roots(&y_coeffs_complex(f, x0));
    if ys.is_empty() {
        roots(&y_coeffs_complex(h, x0))
    } else {
        ys
    }
}

/// Least-squares Newton step, orthogonal to the unit vector `u`, towards a
/// common zero of all minors, and the numeric rank of their gradients.
fn newton_step(gradients: &[(&MultiPoly, Vec<MultiPoly>)], u: &[Complex64]) -> Option<(DVector<Complex64>, usize)> {
    let n = gradients.len();
    let jac = DMatrix::from_fn(n + 1, 3, |i, j| match gradients.get(i) {
        Some((_, grad)) => grad[j].eval_complex(u),
        None => u[j].conj(),
    });
    let rhs = DVector::from_fn(n + 1, |i, _| match gradients.get(i) {
        Some((p, _)) => -p.eval_complex(u),
        None => Complex64::zero(),
    });
    let svd = jac.svd(true, true);
    let top = svd.singular_values.max();
    // the constraint row contributes one to the rank
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL * top)
        .count()
        .saturating_sub(1);
    let step = svd.solve(&rhs, f64::EPSILON * top).ok()?;
    Some((step, rank))
}

/// Gauss-Newton refinement of `x` on the full system of minors.
fn polish(gradients: &[(&MultiPoly, Vec<MultiPoly>)], x: &[Complex64]) -> Candidate {
    let unit = |v: &[Complex64]| {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter().map(|z| z / norm).collect::<Vec<_>>()
    };
    let mut u = unit(x);
    let mut last = Candidate {
        point: u.clone(),
        residual: f64::INFINITY,
        step: f64::INFINITY,
        reduced: false,
        root: 0,
    };
    for _ in 0..POLISH_STEPS {
        let Some((step, rank)) = newton_step(gradients, &u) else {
            break;
        };
        let len = step.norm();
        last = Candidate {
            point: u.clone(),
            residual: f64::INFINITY,
            step: len,
            reduced: rank == 2,
            root: 0,
        };
        if !len.is_finite() || len > POLISH_RADIUS {
            break;
        }
        let moved: Vec<Complex64> = u.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
        u = unit(&moved);
        if len <= 4.0 * f64::EPSILON {
            break;
        }
    }
    last
}

fn components(found: Vec<Found>) -> Vec<LocusComponent> {
    let mut comps: Vec<LocusComponent> = found
        .into_iter()
        .map(
            |Found {
                 point: p,
                 residual,
                 multiplicity,
             }| {
                let z = phase_normalize(&p);
                let imag = z.iter().map(|c| c.im * c.im).sum::<f64>().sqrt();
                let real = imag < REAL_TOL;
                let coords = if real {
                    z.iter().map(|c| Complex64::new(c.re, 0.0)).collect()
                } else {
                    z
                };
                LocusComponent {
                    label: ComponentLabel::Index(0),
                    geometry: Geometry::Point(ProjPoint::Numeric(coords)),
                    projective_dim: 0,
                    exact: false,
                    residual,
                    multiplicity,
                    real,
                }
            },
        )
        .collect();
    comps.sort_by(|a, b| point_key(a).partial_cmp(&point_key(b)).expect("finite"));
    for (k, c) in comps.iter_mut().enumerate() {
        c.label = ComponentLabel::Index(k + 1);
    }
    comps
}

fn point_key(c: &LocusComponent) -> Vec<f64> {
    let p = c.point().expect("numeric point").to_complex();
    let mut key = vec![if c.real { 0.0 } else { 1.0 }];
    key.extend(p.iter().flat_map(|z| [-z.re, -z.im]));
    key
}

/// Replaces numeric points that reconstruct to small rationals and lie on
/// the locus exactly by their exact coordinates.
pub fn certify_exact(t: &MatrixTuple, r: &LocusResult) -> LocusResult {
    let comps = r
        .components
        .iter()
        .map(|c| {
            let mut c = c.clone();
            if let Geometry::Point(p @ ProjPoint::Numeric(_)) = &c.geometry {
                if c.real && c.residual < 1e-10 {
                    if let Some(v) = p.rationalize(RECONSTRUCT_DENOM, 1e-9) {
                        let on = t.evaluate_at(&v).map(|l| l.rank() < t.m()).unwrap_or(false);
                        if on {
                            c.geometry = Geometry::Point(ProjPoint::Exact(v));
                            c.exact = true;
                            c.residual = 0.0;
                        }
                    }
                }
            }
            c
        })
        .collect();
    LocusResult::new(r.m, comps)
}

/// Locus of an arbitrary tuple: exact for tuples of `m + 1` rank-one
/// matrices, numeric (then certified where possible) in the plane.
pub fn compute_locus(t: &MatrixTuple, tol: f64) -> Result<LocusResult> {
    if let Some(f) = super::family::RankOneFamily::try_from_tuple(t) {
        if f.is_generic() && f.images_generic() {
            return super::structured::structured_locus(&f);
        }
    }
    if t.m() == 3 {
        let r = solve_locus_p2(t, tol)?;
        return Ok(certify_exact(t, &r));
    }
    Err(Error::Unsupported(format!(
        "numeric loci are only computed for m = 3 (got m = {}); pass a rank-one span instead",
        t.m()
    )))
}
