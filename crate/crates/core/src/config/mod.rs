//! Projective point configurations: quadrilateral sets in the plane,
//! (generalized) Desargues configurations, frame normalization and the
//! recipe turning a quadrilateral set back into a tuple of matrices.

mod svg;

use nalgebra::Matrix3;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{angular_distance, cross3, dot, normalize_c, Mat, Rational, Subspace};
use crate::locus::LocusResult;
use crate::pencil::{combinations, MatrixTuple};
use crate::point::ProjPoint;

pub use svg::render_svg;

/// Incidence tolerance on unit-normalized coordinates.
pub const DEFAULT_INCIDENCE_TOL: f64 = 1e-7;

/// Labels `P12, P13, P14, P23, P24, P34` in the order used by witnesses.
pub const QUAD_LABELS: [[usize; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    points: Vec<ProjPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<[usize; 2]>>,
}

impl PointConfig {
    /// Rejects zero points, mixed lengths and projective duplicates.
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        let n = points.first().map_or(0, ProjPoint::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::dims(format!("point {i} has length {}, expected {n}", p.len())));
            }
            if p.is_zero() {
                return Err(Error::input(format!("point {i} is zero")));
            }
        }
        for (i, j) in pairs(points.len()) {
            if same_point(&points[i], &points[j]) {
                return Err(Error::input(format!("points {i} and {j} coincide")));
            }
        }
        Ok(PointConfig { points, labels: None })
    }

    pub fn from_exact(points: Vec<Vec<Rational>>) -> Result<Self> {
        PointConfig::new(points.into_iter().map(ProjPoint::Exact).collect())
    }

    /// Points of a zero-dimensional locus.
    pub fn from_locus(r: &LocusResult) -> Result<Self> {
        if r.components.iter().any(|c| c.point().is_none()) {
            return Err(Error::input("locus has positive-dimensional components"));
        }
        PointConfig::new(r.points())
    }

    pub fn with_labels(mut self, labels: Vec<[usize; 2]>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::dims("one label per point is required"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[[usize; 2]]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(ProjPoint::is_exact)
    }

    /// Image under `x -> g x` (exact points only).
    pub fn transform(&self, g: &Mat) -> Result<PointConfig> {
        let pts = self
            .points
            .iter()
            .map(|p| {
                let v = p
                    .as_exact()
                    .ok_or_else(|| Error::input("transform needs exact or real points"))?;
                Ok(ProjPoint::Exact(g.mul_vec(&v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = PointConfig::new(pts)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Exact set equality of two configurations of exact points.
    pub fn same_set(&self, other: &PointConfig) -> bool {
        self.len() == other.len()
            && self
                .points
                .iter()
                .all(|p| other.points.iter().any(|q| same_point(p, q)))
    }

    pub fn to_svg(&self, report: Option<&IncidenceReport>) -> String {
        let labels: Vec<String> = match (&self.labels, report.and_then(|r| r.labeling.as_ref())) {
            (Some(l), _) | (None, Some(l)) => l.iter().map(|[i, j]| format!("P{i}{j}")).collect(),
            _ => (1..=self.len()).map(|k| format!("P{k}")).collect(),
        };
        let lines = report.map(|r| r.hyperplanes.clone()).unwrap_or_default();
        render_svg(&self.points, &lines, &labels)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Projective equality: exact rank test when both are exact, angular
/// distance otherwise.
pub fn same_point(a: &ProjPoint, b: &ProjPoint) -> bool {
    match (a, b) {
        (ProjPoint::Exact(x), ProjPoint::Exact(y)) => Mat::from_columns(&[x.clone(), y.clone()])
            .map(|m| m.rank() < 2)
            .unwrap_or(false),
        _ => angular_distance(&a.to_complex(), &b.to_complex()) < DEFAULT_INCIDENCE_TOL,
    }
}

fn det3_complex(a: &[Complex64], b: &[Complex64], c: &[Complex64]) -> Complex64 {
    let (a, b, c) = (normalize_c(a), normalize_c(b), normalize_c(c));
    Matrix3::new(a[0], b[0], c[0], a[1], b[1], c[1], a[2], b[2], c[2]).determinant()
}

/// Whether three plane points lie on a line.
pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, tol: f64) -> bool {
    match (a, b, c) {
        (ProjPoint::Exact(x), ProjPoint::Exact(y), ProjPoint::Exact(z)) => {
            let n = cross3(x, y).expect("length 3");
            dot(&n, z).is_zero()
        }
        _ => det3_complex(&a.to_complex(), &b.to_complex(), &c.to_complex()).norm() < tol,
    }
}

/// Line through two plane points, as a normal vector.
pub fn line_through(a: &ProjPoint, b: &ProjPoint) -> ProjPoint {
    match (a, b) {
        (ProjPoint::Exact(x), ProjPoint::Exact(y)) => {
            let n = cross3(x, y).expect("length 3");
            ProjPoint::Exact(
                crate::exactlin::primitive_integer_vector(&n)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect(),
            )
        }
        _ => {
            let (x, y) = (a.normalized(), b.normalized());
            let n = vec![
                x[1] * y[2] - x[2] * y[1],
                x[2] * y[0] - x[0] * y[2],
                x[0] * y[1] - x[1] * y[0],
            ];
            let p = ProjPoint::Numeric(n);
            ProjPoint::Numeric(p.normalized())
        }
    }
}

/// Whether the point lies on the line with the given normal.
pub fn incident(point: &ProjPoint, line: &ProjPoint, tol: f64) -> bool {
    match (point, line) {
        (ProjPoint::Exact(x), ProjPoint::Exact(l)) => dot(x, l).is_zero(),
        _ => {
            let (x, l) = (point.normalized(), line.normalized());
            x.iter().zip(&l).map(|(a, b)| a * b).sum::<Complex64>().norm() < tol
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Quadrilateral,
    Desargues,
    GeneralizedDesargues,
    None,
}

/// Point indices are 0-based positions in the input; hyperplane labels in
/// `labeling` are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub verdict: Verdict,
    pub collinear_triples: Vec<[usize; 3]>,
    /// Normals of the reconstructed lines or hyperplanes.
    pub hyperplanes: Vec<ProjPoint>,
    /// `incidence[p][h]`: whether element `p` lies on hyperplane `h`.
    pub incidence: Vec<Vec<bool>>,
    /// Pair of hyperplanes through each element, when the verdict holds.
    pub labeling: Option<Vec<[usize; 2]>>,
    /// Points where three of the subspaces meet (`m = 4`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triple_points: Vec<ProjPoint>,
    /// For each triple point, the indices of the subspaces through it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triple_point_lines: Vec<Vec<usize>>,
}

impl IncidenceReport {
    fn none(collinear_triples: Vec<[usize; 3]>, n: usize) -> Self {
        IncidenceReport {
            verdict: Verdict::None,
            collinear_triples,
            hyperplanes: Vec::new(),
            incidence: vec![Vec::new(); n],
            labeling: None,
            triple_points: Vec::new(),
            triple_point_lines: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::None
    }
}

/// All collinear 3-subsets in lexicographic order.
pub fn collinear_triples(pc: &PointConfig, tol: f64) -> Result<Vec<[usize; 3]>> {
    if pc.points.iter().any(|p| p.len() != 3) {
        return Err(Error::dims("collinearity needs points of P^2"));
    }
    let p = &pc.points;
    Ok(combinations(p.len(), 3)
        .into_iter()
        .filter(|s| collinear(&p[s[0]], &p[s[1]], &p[s[2]], tol))
        .map(|s| [s[0], s[1], s[2]])
        .collect())
}

/// Quadrilateral test for six plane points. The labeling search runs over
/// all orderings of the four lines and reports the lexicographically least
/// assignment of points to `P12, P13, P14, P23, P24, P34`.
pub fn is_quadrilateral(pc: &PointConfig, tol: f64) -> Result<IncidenceReport> {
    if pc.len() != 6 {
        return Err(Error::dims(format!(
            "a quadrilateral set has 6 points, got {}",
            pc.len()
        )));
    }
    let triples = collinear_triples(pc, tol)?;
    let covers = (0..6).all(|p| triples.iter().filter(|t| t.contains(&p)).count() == 2);
    if triples.len() != 4 || !covers {
        return Ok(IncidenceReport::none(triples, 6));
    }
    let witness = least_labeling(&triples);
    let Some((order, assign)) = witness else {
        return Ok(IncidenceReport::none(triples, 6));
    };
    let hyperplanes: Vec<ProjPoint> = order
        .iter()
        .map(|&t| line_through(&pc.points[triples[t][0]], &pc.points[triples[t][1]]))
        .collect();
    let incidence = (0..6)
        .map(|p| order.iter().map(|&t| triples[t].contains(&p)).collect())
        .collect();
    let mut labeling = vec![[0, 0]; 6];
    for (k, &p) in assign.iter().enumerate() {
        labeling[p] = QUAD_LABELS[k];
    }
    Ok(IncidenceReport {
        verdict: Verdict::Quadrilateral,
        collinear_triples: triples,
        hyperplanes,
        incidence,
        labeling: Some(labeling),
        triple_points: Vec::new(),
        triple_point_lines: Vec::new(),
    })
}

/// Over all orderings of the four triples (as lines `l1..l4`), the ordering
/// whose point sequence `(P12, ..., P34)` is lexicographically least.
fn least_labeling(triples: &[[usize; 3]]) -> Option<([usize; 4], [usize; 6])> {
    let mut best: Option<([usize; 4], [usize; 6])> = None;
    for perm in permutations4() {
        let mut seq = [0usize; 6];
        let mut ok = true;
        for (k, [i, j]) in QUAD_LABELS.iter().enumerate() {
            let (a, b) = (&triples[perm[i - 1]], &triples[perm[j - 1]]);
            let common: Vec<usize> = a.iter().copied().filter(|p| b.contains(p)).collect();
            if common.len() != 1 {
                ok = false;
                break;
            }
            seq[k] = common[0];
        }
        if ok && best.is_none_or(|(_, s)| seq < s) {
            best = Some((perm, seq));
        }
    }
    best
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let Some(d) = 6usize.checked_sub(a + b + c) else {
                    continue;
                };
                if d < 4 && a != b && a != c && b != c && d != a && d != b && d != c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// The map `(AD)^{-1}` sending four dual points in general position to
/// `e1, e2, e3, (1, 1, 1)`, where `A = [l1 l2 l3]` and `D = diag(A^{-1} l4)`.
pub fn normalize_quadrilateral(lines: &[Vec<Rational>]) -> Result<Mat> {
    if lines.len() != 4 || lines.iter().any(|l| l.len() != 3) {
        return Err(Error::dims("four dual points of P^2 are required"));
    }
    for s in combinations(4, 3) {
        let m = Mat::from_columns(&[lines[s[0]].clone(), lines[s[1]].clone(), lines[s[2]].clone()])?;
        if m.det()?.is_zero() {
            return Err(Error::CollinearDualPoints {
                triple: [s[0] + 1, s[1] + 1, s[2] + 1],
            });
        }
    }
    let a = Mat::from_columns(&lines[..3])?;
    let d = a.solve(&lines[3])?;
    let dm = Mat::from_fn(3, 3, |i, j| if i == j { d[i].clone() } else { Rational::zero() });
    a.mul(&dm)?.inverse()
}

/// Desargues-type test for `C(m+1, 2)` subspaces of projective dimension
/// `m - 3` in `P^{m-1}`: there must be `m + 1` hyperplanes, each containing
/// exactly `m` of them, with every subspace on exactly two. Candidate
/// hyperplanes are spans of pairs.
pub fn is_generalized_desargues(subspaces: &[Subspace], m: usize) -> Result<IncidenceReport> {
    if m < 3 {
        return Err(Error::input("generalized Desargues needs m >= 3"));
    }
    let want = m * (m + 1) / 2;
    if subspaces.len() != want {
        return Err(Error::dims(format!(
            "expected {want} subspaces for m = {m}, got {}",
            subspaces.len()
        )));
    }
    if subspaces.iter().any(|s| s.ambient_dim() != m) {
        return Err(Error::dims(format!("subspaces must live in Q^{m}")));
    }
    let n = subspaces.len();
    if subspaces.iter().any(|s| s.dim() + 2 != m) {
        return Ok(IncidenceReport::none(Vec::new(), n));
    }
    let mut candidates: Vec<Subspace> = Vec::new();
    for (i, j) in pairs(n) {
        let s = subspaces[i].sum(&subspaces[j])?;
        if s.dim() + 1 == m && !candidates.contains(&s) {
            candidates.push(s);
        }
    }
    let mut planes: Vec<(Vec<Rational>, Vec<usize>)> = candidates
        .iter()
        .filter_map(|h| {
            let members: Vec<usize> = (0..n).filter(|&k| h.contains_subspace(&subspaces[k])).collect();
            (members.len() == m).then(|| (h.normal().expect("hyperplane"), members))
        })
        .collect();
    planes.sort_by(|a, b| a.1.cmp(&b.1));
    let counts: Vec<usize> = (0..n)
        .map(|k| planes.iter().filter(|(_, mem)| mem.contains(&k)).count())
        .collect();
    if planes.len() != m + 1 || counts.iter().any(|&c| c != 2) {
        return Ok(IncidenceReport::none(Vec::new(), n));
    }
    let incidence: Vec<Vec<bool>> = (0..n)
        .map(|k| planes.iter().map(|(_, mem)| mem.contains(&k)).collect())
        .collect();
    let labeling = incidence
        .iter()
        .map(|row| {
            let h: Vec<usize> = (0..row.len()).filter(|&i| row[i]).map(|i| i + 1).collect();
            [h[0], h[1]]
        })
        .collect();
    let mut report = IncidenceReport {
        verdict: match m {
            3 => Verdict::Quadrilateral,
            4 => Verdict::Desargues,
            _ => Verdict::GeneralizedDesargues,
        },
        collinear_triples: Vec::new(),
        hyperplanes: planes.into_iter().map(|(h, _)| ProjPoint::Exact(h)).collect(),
        incidence,
        labeling: Some(labeling),
        triple_points: Vec::new(),
        triple_point_lines: Vec::new(),
    };
    if m == 4 {
        let mut pts: Vec<Subspace> = Vec::new();
        for (i, j) in pairs(n) {
            let s = subspaces[i].intersect(&subspaces[j])?;
            if s.dim() == 1 && !pts.contains(&s) {
                pts.push(s);
            }
        }
        for p in pts {
            let through: Vec<usize> = (0..n).filter(|&k| subspaces[k].contains_subspace(&p)).collect();
            if through.len() == 3 {
                report.triple_points.push(ProjPoint::Exact(p.point().expect("line")));
                report.triple_point_lines.push(through);
            }
        }
        if report.triple_points.len() != 10 {
            report.verdict = Verdict::None;
        }
    }
    Ok(report)
}

fn quad_point<'a>(pc: &'a PointConfig, labels: &[[usize; 2]], want: [usize; 2]) -> Result<&'a ProjPoint> {
    labels
        .iter()
        .position(|l| *l == want || *l == [want[1], want[0]])
        .map(|k| &pc.points[k])
        .ok_or_else(|| Error::input(format!("label P{}{} is missing", want[0], want[1])))
}

/// The recipe: with the labeling `P_ij`, set `v1 = P12 × P13`,
/// `v2 = P12 × P23`, `v3 = P13 × P23`, `v4 = P14 × P34` and return the
/// symmetric matrices `A_i = v_i v_iᵀ`. Without labels the quadrilateral
/// witness labeling is used.
pub fn quadrilateral_to_matrices(pc: &PointConfig) -> Result<MatrixTuple> {
    let exact: Vec<Vec<Rational>> = pc
        .points
        .iter()
        .map(|p| {
            p.as_exact()
                .ok_or_else(|| Error::input("the recipe needs exact or real points"))
        })
        .collect::<Result<_>>()?;
    let epc = PointConfig::new(exact.into_iter().map(ProjPoint::Exact).collect())?;
    let labels: Vec<[usize; 2]> = match &pc.labels {
        Some(l) => l.clone(),
        None => {
            let report = is_quadrilateral(&epc, DEFAULT_INCIDENCE_TOL)?;
            report
                .labeling
                .ok_or_else(|| Error::input("points are not a quadrilateral set"))?
        }
    };
    if epc.len() != 6 {
        return Err(Error::dims("the recipe needs six points"));
    }
    let p = |i, j| quad_point(&epc, &labels, [i, j]);
    for (a, b, c) in [
        ((1, 2), (1, 3), (1, 4)),
        ((1, 2), (2, 3), (2, 4)),
        ((1, 3), (2, 3), (3, 4)),
        ((1, 4), (2, 4), (3, 4)),
    ] {
        if !collinear(p(a.0, a.1)?, p(b.0, b.1)?, p(c.0, c.1)?, 0.0) {
            return Err(Error::input(format!(
                "labeling inconsistent: P{}{}, P{}{}, P{}{} are not collinear",
                a.0, a.1, b.0, b.1, c.0, c.1
            )));
        }
    }
    let v = |a: (usize, usize), b: (usize, usize)| -> Result<Vec<Rational>> {
        match line_through(p(a.0, a.1)?, p(b.0, b.1)?) {
            ProjPoint::Exact(v) => Ok(v),
            ProjPoint::Numeric(_) => unreachable!("exact points"),
        }
    };
    let vs = [
        v((1, 2), (1, 3))?,
        v((1, 2), (2, 3))?,
        v((1, 3), (2, 3))?,
        v((1, 4), (3, 4))?,
    ];
    MatrixTuple::new(vs.iter().map(|v| Mat::outer(v, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::rat;
    use crate::locus::{structured_locus, RankOneFamily};

    fn standard() -> PointConfig {
        PointConfig::from_exact(catalog::standard_six_points()).unwrap()
    }

    #[test]
    fn standard_points_are_quadrilateral() {
        let r = is_quadrilateral(&standard(), DEFAULT_INCIDENCE_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Quadrilateral);
        assert_eq!(r.collinear_triples.len(), 4);
        let mut lines: Vec<Vec<Rational>> = r.hyperplanes.iter().map(|l| l.as_exact().unwrap()).collect();
        lines.sort();
        let mut want = catalog::sylvester_vectors(3);
        want.sort();
        assert_eq!(lines, want);
        for row in &r.incidence {
            assert_eq!(row.iter().filter(|b| **b).count(), 2);
        }
        for h in 0..4 {
            assert_eq!(r.incidence.iter().filter(|row| row[h]).count(), 3);
        }
    }

    #[test]
    fn one_collinear_triple_is_not_enough() {
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 5], [3, -1, 7]];
        let pc = PointConfig::from_exact(pts.iter().map(|p| p.iter().map(|&v| rat(v)).collect()).collect()).unwrap();
        let r = is_quadrilateral(&pc, DEFAULT_INCIDENCE_TOL).unwrap();
        assert_eq!(r.collinear_triples, vec![[0, 1, 2]]);
        assert_eq!(r.verdict, Verdict::None);
    }

    #[test]
    fn duplicates_and_counts_rejected() {
        let mut pts = catalog::standard_six_points();
        pts[1] = pts[0].iter().map(|v| v * rat(-3)).collect();
        assert!(PointConfig::from_exact(pts).is_err());
        let five = PointConfig::from_exact(catalog::standard_six_points()[..5].to_vec()).unwrap();
        assert!(is_quadrilateral(&five, 1e-7).is_err());
    }

    #[test]
    fn normalization_hits_standard_frame() {
        let lines = vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(-1)],
            vec![rat(1), rat(1), rat(3)],
            vec![rat(-1), rat(2), rat(1)],
        ];
        let g = normalize_quadrilateral(&lines).unwrap();
        let frame = catalog::sylvester_vectors(3);
        for (l, f) in lines.iter().zip(&frame) {
            let img = ProjPoint::Exact(g.mul_vec(l).unwrap());
            assert!(same_point(&img, &ProjPoint::Exact(f.clone())));
        }
        let id = normalize_quadrilateral(&frame).unwrap();
        assert_eq!(id, Mat::identity(3));
    }

    #[test]
    fn collinear_dual_points_named() {
        let lines = vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
            vec![rat(1), rat(1), rat(0)],
        ];
        assert_eq!(
            normalize_quadrilateral(&lines),
            Err(Error::CollinearDualPoints { triple: [1, 2, 4] })
        );
    }

    #[test]
    fn desargues_for_m4() {
        let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(4)).unwrap();
        let subs = structured_locus(&f).unwrap().subspaces();
        let r = is_generalized_desargues(&subs, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Desargues);
        assert_eq!(r.hyperplanes.len(), 5);
        assert_eq!(r.triple_points.len(), 10);
        assert!(r.triple_point_lines.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn m3_desargues_is_quadrilateral() {
        let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(3)).unwrap();
        let subs = structured_locus(&f).unwrap().subspaces();
        let r = is_generalized_desargues(&subs, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Quadrilateral);
    }

    #[test]
    fn recipe_on_standard_points() {
        let t = quadrilateral_to_matrices(&standard()).unwrap();
        assert!(t.is_symmetric());
        let f = RankOneFamily::try_from_tuple(&t).unwrap();
        let back = PointConfig::new(structured_locus(&f).unwrap().points()).unwrap();
        assert!(back.same_set(&standard()));
    }

    #[test]
    fn recipe_rejects_bad_labels() {
        let pc = standard()
            .with_labels(vec![[1, 3], [1, 2], [1, 4], [2, 3], [2, 4], [3, 4]])
            .unwrap();
        assert!(quadrilateral_to_matrices(&pc).is_err());
        let good = standard()
            .with_labels(vec![[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]])
            .unwrap();
        assert!(quadrilateral_to_matrices(&good).is_ok());
    }
}
