//! Reruns the reference examples and tabulates the outcome.

use std::time::Instant;

use serde::Serialize;

use deglab::analysis::{jacobian_rank, phase_retrieval_test, Parametrization};
use deglab::catalog;
use deglab::config::{is_generalized_desargues, is_quadrilateral, PointConfig, Verdict, DEFAULT_INCIDENCE_TOL};
use deglab::exactlin::{rat, DEFAULT_REL_TOL};
use deglab::locus::{fiber_system, solve_locus_p2, span_tuple, structured_locus, RankOneFamily, SpanCoefficients};
use deglab::pencil::det_pencil;
use deglab::symmetroid::{cubic_span, cubic_system_from_points, structured_nodes, sylvester_derivative_check};
use deglab::ProjPoint;

use crate::error::CliResult;
use crate::report::Report;

#[derive(Serialize)]
struct Row {
    name: &'static str,
    passed: bool,
    detail: String,
    millis: f64,
}

type Check = fn() -> Result<String, String>;

fn fail(e: impl ToString) -> String {
    e.to_string()
}

fn plane_example() -> Result<String, String> {
    let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(3)).map_err(fail)?;
    let got = PointConfig::from_locus(&structured_locus(&f).map_err(fail)?).map_err(fail)?;
    let want = [[1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let want =
        PointConfig::from_exact(want.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()).map_err(fail)?;
    got.same_set(&want)
        .then(|| "six exact points".to_string())
        .ok_or_else(|| "point set differs".into())
}

fn cayley_cubic() -> Result<String, String> {
    let s = det_pencil(&catalog::cayley_tuple()).display_prefixed("u");
    let want = "u1*u2*u3 + u1*u2*u4 + u1*u3*u4 + u2*u3*u4";
    (s == want).then(|| s.clone()).ok_or(s)
}

fn second_symmetroid() -> Result<String, String> {
    let form = det_pencil(&catalog::second_symmetroid_tuple());
    (form == catalog::second_symmetroid_form())
        .then(|| form.display_prefixed("u"))
        .ok_or_else(|| form.display_prefixed("u"))
}

fn cayley_nodes() -> Result<String, String> {
    let f = RankOneFamily::try_from_tuple(&catalog::cayley_tuple()).ok_or("not a rank-one tuple")?;
    let nodes = structured_nodes(&f, &SpanCoefficients::identity(4)).map_err(fail)?;
    let ok = nodes.len() == 4
        && nodes
            .iter()
            .enumerate()
            .all(|(j, n)| n.certified && n.point == ProjPoint::Exact(catalog::unit(4, j)));
    ok.then(|| "nodes at the four coordinate points".into())
        .ok_or_else(|| format!("{nodes:?}"))
}

fn fiber() -> Result<String, String> {
    let fs = fiber_system(&catalog::fiber_a1(), &catalog::fiber_a2()).map_err(fail)?;
    let want = catalog::fiber_expected_q();
    let rows_match =
        (0..3).all(|i| fs.q.row(i) == want.row(i) || fs.q.row(i).iter().zip(want.row(i)).all(|(a, b)| *a == -b));
    (rows_match && fs.rank == 3)
        .then(|| "Q as printed, rank 3".into())
        .ok_or_else(|| format!("rank {}", fs.rank))
}

fn symmetroid_dims() -> Result<String, String> {
    let a = jacobian_rank(&Parametrization::SymmetroidCoeffs { m: 3, r: 4 }, 3, 7).map_err(fail)?;
    let b = jacobian_rank(&Parametrization::SymmetroidCoeffs { m: 4, r: 5 }, 3, 7).map_err(fail)?;
    (a.rank == 16 && b.rank == 35)
        .then(|| "ranks 16 and 35".into())
        .ok_or_else(|| format!("ranks {} and {}", a.rank, b.rank))
}

fn span_dims() -> Result<String, String> {
    let ranks: Vec<usize> = [
        Parametrization::RankOneSpan { m: 3 },
        Parametrization::RankOneSpan { m: 4 },
        Parametrization::fixed_kernels(3),
        Parametrization::fixed_kernels(4),
    ]
    .iter()
    .map(|p| jacobian_rank(p, 3, 7).map(|r| r.rank))
    .collect::<Result<_, _>>()
    .map_err(fail)?;
    (ranks == [32, 55, 24, 40])
        .then(|| format!("{ranks:?}"))
        .ok_or_else(|| format!("{ranks:?}"))
}

fn cubic_basis() -> Result<String, String> {
    let pc = PointConfig::from_exact(catalog::standard_six_points()).map_err(fail)?;
    let got = cubic_span(&cubic_system_from_points(&pc).map_err(fail)?).map_err(fail)?;
    let want = cubic_span(&catalog::standard_cubic_basis()).map_err(fail)?;
    (got == want)
        .then(|| "same span of cubics".into())
        .ok_or_else(|| "spans differ".into())
}

fn standard_quadrilateral() -> Result<String, String> {
    let locus = solve_locus_p2(&catalog::standard_quadrilateral_tuple(), DEFAULT_REL_TOL).map_err(fail)?;
    let pc = PointConfig::from_locus(&locus).map_err(fail)?;
    let report = is_quadrilateral(&pc, DEFAULT_INCIDENCE_TOL).map_err(fail)?;
    (locus.real_points().len() == 6 && report.verdict == Verdict::Quadrilateral)
        .then(|| format!("six real points, residual {:.1e}", locus.max_residual()))
        .ok_or_else(|| {
            format!(
                "{} real points, verdict {:?}",
                locus.real_points().len(),
                report.verdict
            )
        })
}

fn desargues() -> Result<String, String> {
    let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(4)).map_err(fail)?;
    span_tuple(&f, &SpanCoefficients::identity(5)).map_err(fail)?;
    let lines = structured_locus(&f).map_err(fail)?.subspaces();
    let report = is_generalized_desargues(&lines, 4).map_err(fail)?;
    (report.verdict == Verdict::Desargues)
        .then(|| "10 lines, 5 planes, 10 points".into())
        .ok_or_else(|| format!("{:?}", report.verdict))
}

fn sylvester_identity() -> Result<String, String> {
    for m in 2..=4 {
        if !sylvester_derivative_check(m).map_err(fail)? {
            return Err(format!("fails for m = {m}"));
        }
    }
    Ok("m = 2, 3, 4".into())
}

fn cayley_phase_retrieval() -> Result<String, String> {
    let v = phase_retrieval_test(&catalog::cayley_tuple(), DEFAULT_REL_TOL).map_err(fail)?;
    (!v.holds && v.witnesses.len() == 6)
        .then(|| "fails, six real witnesses".into())
        .ok_or_else(|| format!("holds = {}, {} witnesses", v.holds, v.witnesses.len()))
}

const CHECKS: [(&str, Check); 12] = [
    ("plane locus example", plane_example),
    ("Cayley cubic", cayley_cubic),
    ("second symmetroid", second_symmetroid),
    ("Cayley nodes", cayley_nodes),
    ("fiber system", fiber),
    ("symmetroid dimensions", symmetroid_dims),
    ("span dimensions", span_dims),
    ("cubic basis", cubic_basis),
    ("standard quadrilateral", standard_quadrilateral),
    ("Desargues configuration", desargues),
    ("Sylvester identity", sylvester_identity),
    ("Cayley phase retrieval", cayley_phase_retrieval),
];

pub fn demo() -> CliResult<Report> {
    let rows: Vec<Row> = CHECKS
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let outcome = check();
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let passed = outcome.is_ok();
            Row {
                name,
                passed,
                detail: outcome.unwrap_or_else(|e| e),
                millis,
            }
        })
        .collect();
    let passed = rows.iter().filter(|r| r.passed).count();
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{}  {:<width$}  {}\n",
            if r.passed { "pass" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    text.push_str(&format!("{passed} of {} examples passed\n", rows.len()));
    let value = serde_json::json!({ "rows": rows, "passed": passed, "total": rows.len() });
    let mut report = Report::new(&value, text)?;
    report.ok = passed == rows.len();
    Ok(report)
}
