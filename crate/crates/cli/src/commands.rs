//! One function per subcommand. Inputs are validated before any computation.

use serde::Serialize;
use serde_json::json;

use deglab::analysis::{
    jacobian_rank, phase_retrieval_test, phase_retrieval_test_span, JacobianReport, PRVerdict, Parametrization,
};
use deglab::config::{
    is_generalized_desargues, is_quadrilateral, quadrilateral_to_matrices, IncidenceReport, PointConfig,
    DEFAULT_INCIDENCE_TOL,
};
use deglab::exactlin::{format_rational, Mat, Subspace, DEFAULT_REL_TOL};
use deglab::locus::{compute_locus, fiber_system, structured_locus, Geometry, LocusResult};
use deglab::pencil::MatrixTuple;
use deglab::symmetroid::{build_symmetroid, structured_nodes, verify_node, NodeCertificate, NODE_TOL};
use deglab::ProjPoint;

use crate::error::{CliError, CliResult};
use crate::input::{Document, Operators};
use crate::report::{point_text, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DimKind {
    /// Coefficients of det(Σ u_i A_i) over symmetric tuples (needs --m, --r).
    Symmetroid,
    /// Spans of m + 1 rank-one matrices.
    Span,
    /// Spans of rank-one matrices with fixed kernels.
    FixedKernels,
    /// Spans of m + 1 symmetric rank-one matrices.
    SymmetricSpan,
}

pub struct Options {
    pub seed: u64,
    pub tol: Option<f64>,
    pub trials: usize,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub kind: Option<DimKind>,
}

impl Options {
    fn tol_or(&self, default: f64) -> CliResult<f64> {
        let tol = self.tol.unwrap_or(default);
        if tol > 0.0 && tol < 1.0 {
            Ok(tol)
        } else {
            Err(CliError::validation(format!("--tol must lie in (0, 1), got {tol}")))
        }
    }
}

fn matrix_text(a: &Mat) -> String {
    (0..a.rows())
        .map(|i| {
            let row: Vec<String> = a.row(i).iter().map(format_rational).collect();
            format!("  [{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn tuple_text(t: &MatrixTuple) -> String {
    let mut out = String::new();
    for (i, a) in t.matrices().iter().enumerate() {
        out.push_str(&format!("A{} =\n{}\n", i + 1, matrix_text(a)));
    }
    out
}

fn subspace_text(s: &Subspace) -> String {
    let vs: Vec<String> = s
        .basis_vectors()
        .iter()
        .map(|v| point_text(&ProjPoint::Exact(v.clone())))
        .collect();
    format!("span{{{}}}", vs.join(", "))
}

fn locus_text(r: &LocusResult) -> String {
    let mut out = format!(
        "locus in P^{}: {} components, degree {}{}\n",
        r.m - 1,
        r.len(),
        r.degree,
        if r.all_real { ", all real" } else { "" }
    );
    for c in &r.components {
        let geometry = match &c.geometry {
            Geometry::Point(p) => point_text(p),
            Geometry::Subspace(s) => subspace_text(s),
        };
        let kind = if c.exact {
            "exact".to_string()
        } else {
            format!("residual {:.1e}", c.residual)
        };
        let real = if c.real { "real" } else { "complex" };
        out.push_str(&format!("  {:<4} {geometry}  [{kind}, {real}]\n", c.label.to_string()));
    }
    out
}

fn plane_svg(pc: &PointConfig, tol: f64) -> CliResult<String> {
    let report = if pc.len() == 6 {
        Some(is_quadrilateral(pc, tol)?)
    } else {
        None
    };
    Ok(pc.to_svg(report.as_ref().filter(|r| r.holds())))
}

pub fn locus(doc: &Document, opts: &Options) -> CliResult<Report> {
    let ops = doc.operators()?;
    let tol = opts.tol_or(DEFAULT_REL_TOL)?;
    let result = match &ops {
        Operators::Span { family, .. } => {
            ops.tuple()?;
            structured_locus(family)?
        }
        Operators::Tuple(t) => compute_locus(t, tol)?,
    };
    let mut report = Report::new(&result, locus_text(&result))?;
    if result.m == 3 {
        if let Ok(pc) = PointConfig::from_locus(&result) {
            report = report.with_svg(plane_svg(&pc, DEFAULT_INCIDENCE_TOL)?);
        }
    }
    Ok(report)
}

#[derive(Serialize)]
struct ConfigReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<ProjPoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<[usize; 2]>>,
    #[serde(flatten)]
    report: IncidenceReport,
}

fn incidence_text(r: &IncidenceReport) -> String {
    let mut out = format!("verdict: {:?}\n", r.verdict);
    if let Some(l) = &r.labeling {
        let labels: Vec<String> = l.iter().map(|[i, j]| format!("{i}{j}")).collect();
        out.push_str(&format!("labels: {}\n", labels.join(" ")));
    }
    for (k, h) in r.hyperplanes.iter().enumerate() {
        out.push_str(&format!("  l{} = {}\n", k + 1, point_text(h)));
    }
    out
}

pub fn config(doc: &Document, opts: &Options) -> CliResult<Report> {
    let tol = opts.tol_or(DEFAULT_INCIDENCE_TOL)?;
    let subspaces: Option<Vec<Subspace>> = doc.components.as_ref().and_then(|cs| {
        cs.iter()
            .any(|c| matches!(c.geometry, Geometry::Subspace(_)))
            .then(|| cs.iter().filter_map(|c| c.subspace()).collect())
    });
    if let Some(subs) = subspaces {
        let m = doc.m.or_else(|| subs.first().map(Subspace::ambient_dim)).unwrap_or(0);
        if subs.len() != doc.components.as_ref().map_or(0, Vec::len) {
            return Err(CliError::validation("every component must be an exact subspace"));
        }
        let report = is_generalized_desargues(&subs, m)?;
        let text = incidence_text(&report);
        let out = ConfigReport {
            points: None,
            labels: report.labeling.clone(),
            report,
        };
        return Report::new(&out, text);
    }
    let pc = doc.point_config()?;
    if pc.len() != 6 || pc.points().iter().any(|p| p.len() != 3) {
        return Err(CliError::validation(format!(
            "the quadrilateral test needs six points of P^2, got {} points",
            pc.len()
        )));
    }
    let report = is_quadrilateral(&pc, tol)?;
    let svg = pc.to_svg(Some(&report).filter(|r| r.holds()));
    let text = incidence_text(&report);
    let labels = pc.labels().map(<[_]>::to_vec).or_else(|| report.labeling.clone());
    let out = ConfigReport {
        points: Some(pc.points().to_vec()),
        labels,
        report,
    };
    Ok(Report::new(&out, text)?.with_svg(svg))
}

pub fn recipe(doc: &Document, _opts: &Options) -> CliResult<Report> {
    let pc = doc.point_config()?;
    let t = quadrilateral_to_matrices(&pc)?;
    Report::new(&t, tuple_text(&t))
}

pub fn symmetroid(doc: &Document, _opts: &Options) -> CliResult<Report> {
    let t = doc.operators()?.tuple()?;
    let s = build_symmetroid(&t);
    let value = json!({
        "m": s.m(),
        "r": s.r(),
        "very_real": s.is_very_real(),
        "display": s.display(),
        "form": s.form_json(),
        "pencil": s.pencil(),
    });
    let text = format!(
        "det(u1*A1 + ... + u{}*A{}) = {}\n{}\n",
        s.r(),
        s.r(),
        s.display(),
        if s.is_very_real() {
            "very real (symmetric tuple)"
        } else {
            "tuple is not symmetric"
        }
    );
    Report::new(&value, text)
}

pub fn nodes(doc: &Document, opts: &Options) -> CliResult<Report> {
    let tol = opts.tol_or(NODE_TOL)?;
    let nodes: Vec<NodeCertificate> = match doc.operators()? {
        Operators::Span { family, coefficients } => {
            if doc.points.is_some() {
                return Err(CliError::validation("`points` is only read together with `matrices`"));
            }
            structured_nodes(&family, &coefficients)?
        }
        Operators::Tuple(t) => {
            let points = doc
                .points
                .as_ref()
                .ok_or_else(|| CliError::validation("missing field `points`: candidate nodes for `matrices`"))?;
            if let Some(p) = points.iter().find(|p| p.len() != t.r()) {
                return Err(CliError::validation(format!(
                    "node candidate of length {} for r = {}",
                    p.len(),
                    t.r()
                )));
            }
            let s = build_symmetroid(&t);
            points
                .iter()
                .map(|p| verify_node(&s, p, tol))
                .collect::<Result<_, _>>()?
        }
    };
    let all = nodes.iter().all(|n| n.certified);
    let mut text = String::new();
    for n in &nodes {
        text.push_str(&format!(
            "{}  rank {}  {}\n",
            point_text(&n.point),
            n.pencil_rank,
            if n.certified { "node" } else { "not a node" }
        ));
    }
    Report::new(&json!({ "nodes": nodes, "all_certified": all }), text)
}

fn parametrization(opts: &Options) -> CliResult<Parametrization> {
    let kind = opts.kind.ok_or_else(|| CliError::validation("--kind is required"))?;
    let m = opts.m.ok_or_else(|| CliError::validation("--m is required"))?;
    if m < 2 {
        return Err(CliError::validation(format!("--m must be at least 2, got {m}")));
    }
    Ok(match kind {
        DimKind::Symmetroid => {
            let r = opts
                .r
                .ok_or_else(|| CliError::validation("--r is required for --kind symmetroid"))?;
            if r == 0 {
                return Err(CliError::validation("--r must be positive"));
            }
            Parametrization::SymmetroidCoeffs { m, r }
        }
        DimKind::Span => Parametrization::RankOneSpan { m },
        DimKind::FixedKernels => Parametrization::fixed_kernels(m),
        DimKind::SymmetricSpan => Parametrization::SymmetricSpan { m },
    })
}

pub fn dim(opts: &Options) -> CliResult<Report> {
    let p = parametrization(opts)?;
    if opts.trials == 0 {
        return Err(CliError::validation("--trials must be positive"));
    }
    let r: JacobianReport = jacobian_rank(&p, opts.trials, opts.seed)?;
    let text = format!(
        "{}: Jacobian rank {} (trials {:?}), projective dimension {}, domain {}, codomain {}\n",
        r.kind, r.rank, r.ranks_per_trial, r.projective_dim, r.domain_dim, r.codomain_dim
    );
    Report::new(&r, text)
}

pub fn pr_test(doc: &Document, opts: &Options) -> CliResult<Report> {
    let tol = opts.tol_or(DEFAULT_REL_TOL)?;
    let v: PRVerdict = match doc.operators()? {
        Operators::Span { family, coefficients } => phase_retrieval_test_span(&family, &coefficients)?,
        Operators::Tuple(t) => phase_retrieval_test(&t, tol)?,
    };
    let mut text = format!(
        "phase retrieval: {} ({:?})\n",
        if v.holds { "holds" } else { "fails" },
        v.method
    );
    for w in v.witness_points() {
        text.push_str(&format!("  real witness {}\n", point_text(&w)));
    }
    Report::new(&v, text)
}

pub fn fiber(doc: &Document, _opts: &Options) -> CliResult<Report> {
    let (a1, a2) = doc.fiber_pair()?;
    let fs = fiber_system(&a1, &a2)?;
    let text = format!("Q =\n{}\nrank {}\n", matrix_text(&fs.q), fs.rank);
    Report::new(&fs, text)
}

pub fn plot(doc: &Document, opts: &Options) -> CliResult<Report> {
    let tol = opts.tol_or(DEFAULT_INCIDENCE_TOL)?;
    let pc = if doc.matrices.is_some() || doc.family.is_some() {
        let ops = doc.operators()?;
        let result = match &ops {
            Operators::Span { family, .. } => structured_locus(family)?,
            Operators::Tuple(t) => compute_locus(t, DEFAULT_REL_TOL)?,
        };
        if result.m != 3 {
            return Err(CliError::validation("plots are drawn for m = 3"));
        }
        PointConfig::from_locus(&result)?
    } else {
        doc.point_config()?
    };
    if pc.points().iter().any(|p| p.len() != 3) {
        return Err(CliError::validation("plots need points of P^2"));
    }
    let svg = plane_svg(&pc, tol)?;
    Ok(Report::new(&json!({ "svg": svg }), svg.clone())?.with_svg(svg))
}
