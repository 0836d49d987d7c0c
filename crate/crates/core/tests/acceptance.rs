//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;

use deglab::analysis::{jacobian_rank, measurement, phase_retrieval_test, JacobianReport, Parametrization};
use deglab::catalog;
use deglab::config::{is_generalized_desargues, is_quadrilateral, quadrilateral_to_matrices, PointConfig, Verdict};
use deglab::exactlin::{frac, rat, Mat, Rational, Subspace};
use deglab::locus::{
    compute_locus, decompose_symmetric_tuple, random_coefficients, random_family, random_invertible,
    random_symmetric_family, random_symmetric_tuple, solve_locus_p2, span_tuple, structured_locus, vanishes_on,
    Decomposition, RankOneFamily, SpanCoefficients,
};
use deglab::par::trial_rng;
use deglab::pencil::{build_l, det_pencil, hilbert_burch_swap, LinearMatrix, MatrixTuple, MultiPoly};
use deglab::symmetroid::{cubic_span, cubic_system_from_points, structured_nodes, sylvester_derivative_check};
use deglab::ProjPoint;

/// Wall-clock bound for the exact plane example.
const EXAMPLE_TIME: Duration = Duration::from_secs(1);
/// Wall-clock bound for the two symmetroid Jacobian ranks.
const JACOBIAN_TIME: Duration = Duration::from_secs(60);
/// Largest accepted all-minor residual of a numeric locus point.
const RESIDUAL_TOL: f64 = 1e-8;
/// Relative tolerance handed to the plane solver.
const SOLVER_TOL: f64 = 1e-8;
/// Collinearity tolerance for numeric quadrilateral checks.
const INCIDENCE_TOL: f64 = 1e-7;
const SEED: u64 = 7;
const JACOBIAN_TRIALS: usize = 3;
const RANDOM_TUPLES: usize = 50;
const ROUND_TRIPS: usize = 20;
const PROPERTY_TRIALS: usize = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.random_range(-30..=30), rng.random_range(1..=12))
}

fn random_rational_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

fn c1_example() -> Outcome {
    let start = Instant::now();
    let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(3)).map_err(|e| e.to_string())?;
    let locus = structured_locus(&f).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want = [[1, -1, 0], [1, 0, -1], [0, 1, -1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    ensure(locus.is_exact() && locus.len() == 6, || {
        format!("{} components", locus.len())
    })?;
    let got = PointConfig::from_locus(&locus).map_err(|e| e.to_string())?;
    let want = PointConfig::from_exact(want.iter().map(|p| ints(p)).collect()).map_err(|e| e.to_string())?;
    ensure(got.same_set(&want), || format!("points {:?}", locus.points()))?;
    ensure(elapsed < EXAMPLE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("the six listed points, exact, {elapsed:.2?}"))
}

fn cayley_pencil() -> LinearMatrix {
    // [[u1+u4, u4, u4], [u4, u2+u4, u4], [u4, u4, u3+u4]]
    LinearMatrix::from_fn(3, 3, 4, |i, j, k| {
        let v = (k == 3) || (i == j && k == i);
        rat(v as i64)
    })
}

fn c2_hilbert_burch() -> Outcome {
    let t = catalog::cayley_tuple();
    let l = build_l(&t);
    let u = hilbert_burch_swap(&l);
    ensure(u == cayley_pencil(), || "pencil differs from the printed one".into())?;
    let det = u.det().map_err(|e| e.to_string())?;
    let want = {
        let v = |i| MultiPoly::var(4, i);
        let t3 = |a: usize, b: usize, c: usize| &(&v(a) * &v(b)) * &v(c);
        &(&t3(0, 1, 2) + &t3(0, 1, 3)) + &(&t3(0, 2, 3) + &t3(1, 2, 3))
    };
    ensure(det == want && det_pencil(&t) == want, || {
        format!("det = {}", det.display_prefixed("u"))
    })?;
    let mut rng = trial_rng(SEED, 2);
    for _ in 0..100 {
        let x = random_rational_vec(&mut rng, 3);
        let uu = random_rational_vec(&mut rng, 4);
        let lhs = l.evaluate(&x).and_then(|m| m.mul_vec(&uu)).map_err(|e| e.to_string())?;
        let rhs = u.evaluate(&uu).and_then(|m| m.mul_vec(&x)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("identity fails at x = {x:?}"))?;
    }
    Ok("printed pencil, exact cubic, identity on 100 rational pairs".into())
}

fn c3_second_symmetroid() -> Outcome {
    let form = det_pencil(&catalog::second_symmetroid_tuple());
    ensure(form == catalog::second_symmetroid_form(), || {
        format!("det = {}", form.display_prefixed("u"))
    })?;
    let basis = catalog::standard_cubic_basis();
    let mut rng = trial_rng(SEED, 3);
    for _ in 0..100 {
        let p = random_rational_vec(&mut rng, 3);
        let image: Vec<Rational> = basis.iter().map(|f| f.eval(&p)).collect();
        ensure(form.eval(&image).is_zero(), || {
            format!("form does not vanish at the image of {p:?}")
        })?;
    }
    Ok("exact determinant, vanishes on 100 image points".into())
}

fn c4_nodes() -> Outcome {
    let f = RankOneFamily::try_from_tuple(&catalog::cayley_tuple()).ok_or("not a rank-one family")?;
    let nodes = structured_nodes(&f, &SpanCoefficients::identity(4)).map_err(|e| e.to_string())?;
    ensure(nodes.len() == 4, || format!("{} nodes", nodes.len()))?;
    for (j, n) in nodes.iter().enumerate() {
        ensure(n.point == ProjPoint::Exact(catalog::unit(4, j)), || {
            format!("node {j} at {:?}", n.point)
        })?;
        ensure(n.certified && n.pencil_rank <= 1 && n.minor_residual == 0.0, || {
            format!("node {j} has pencil rank {}", n.pencil_rank)
        })?;
    }
    Ok("four coordinate points, exact rank 1".into())
}

fn c5_fiber() -> Outcome {
    let fs = deglab::locus::fiber_system(&catalog::fiber_a1(), &catalog::fiber_a2()).map_err(|e| e.to_string())?;
    let want = catalog::fiber_expected_q();
    for i in 0..3 {
        let same = fs.q.row(i) == want.row(i);
        let flipped = fs.q.row(i).iter().zip(want.row(i)).all(|(a, b)| *a == -b);
        ensure(same || flipped, || format!("row {i} = {:?}", fs.q.row(i)))?;
    }
    ensure(fs.rank == 3, || format!("rank {}", fs.rank))?;
    Ok("Q entrywise up to row sign, rank 3".into())
}

fn expect_rank(p: Parametrization, rank: usize) -> Result<JacobianReport, String> {
    let r = jacobian_rank(&p, JACOBIAN_TRIALS, SEED).map_err(|e| e.to_string())?;
    ensure(r.rank == rank, || {
        format!("{} has rank {} (per trial {:?})", r.kind, r.rank, r.ranks_per_trial)
    })?;
    Ok(r)
}

fn c6_dimensions() -> Outcome {
    let start = Instant::now();
    let a = expect_rank(Parametrization::SymmetroidCoeffs { m: 3, r: 4 }, 16)?;
    let b = expect_rank(Parametrization::SymmetroidCoeffs { m: 4, r: 5 }, 35)?;
    let elapsed = start.elapsed();
    ensure(a.projective_dim == 15 && b.projective_dim == 34, || {
        format!("projective dims {} and {}", a.projective_dim, b.projective_dim)
    })?;
    ensure(elapsed < JACOBIAN_TIME, || format!("symmetroid ranks took {elapsed:?}"))?;
    expect_rank(Parametrization::RankOneSpan { m: 3 }, 32)?;
    expect_rank(Parametrization::RankOneSpan { m: 4 }, 55)?;
    expect_rank(Parametrization::fixed_kernels(3), 24)?;
    expect_rank(Parametrization::fixed_kernels(4), 40)?;
    Ok(format!(
        "16/15, 35/34 in {elapsed:.2?}; spans 32, 55; fixed kernels 24, 40"
    ))
}

fn c7_cubics() -> Outcome {
    let pc = PointConfig::from_exact(catalog::standard_six_points()).map_err(|e| e.to_string())?;
    let sys = cubic_system_from_points(&pc).map_err(|e| e.to_string())?;
    let got = cubic_span(&sys).map_err(|e| e.to_string())?;
    let want = cubic_span(&catalog::standard_cubic_basis()).map_err(|e| e.to_string())?;
    ensure(got.dim() == 4 && got == want, || "subspaces differ".into())?;
    let canon = |s: &Subspace| s.basis().transpose().row_space_canonical();
    ensure(canon(&got) == canon(&want), || "canonical forms differ".into())?;
    Ok("canonical 4x10 coefficient matrices agree".into())
}

fn c8_desargues() -> Outcome {
    let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(4)).map_err(|e| e.to_string())?;
    let locus = structured_locus(&f).map_err(|e| e.to_string())?;
    let lines = locus.subspaces();
    ensure(
        locus.is_exact() && lines.len() == 10 && lines.iter().all(|s| s.projective_dim() == 1),
        || format!("{} components", locus.len()),
    )?;
    let report = is_generalized_desargues(&lines, 4).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Desargues, || {
        format!("verdict {:?}", report.verdict)
    })?;
    ensure(report.hyperplanes.len() == 5, || {
        format!("{} planes", report.hyperplanes.len())
    })?;
    for h in 0..5 {
        let on = report.incidence.iter().filter(|row| row[h]).count();
        ensure(on == 4, || format!("plane {h} holds {on} lines"))?;
    }
    ensure(report.triple_points.len() == 10, || {
        format!("{} triple points", report.triple_points.len())
    })?;
    ensure(report.triple_point_lines.iter().all(|l| l.len() == 3), || {
        "a point is not on 3 lines".into()
    })?;
    Ok("10 lines, 5 planes x 4 lines, 10 points x 3 lines".into())
}

fn c9_numeric() -> Outcome {
    let mut real_counts = [0usize; 7];
    for k in 0..RANDOM_TUPLES {
        let mut rng = trial_rng(SEED, 900 + k);
        let t = random_symmetric_tuple(&mut rng, 3, 4, 9);
        let r = solve_locus_p2(&t, SOLVER_TOL).map_err(|e| format!("4-tuple {k}: {e}"))?;
        ensure(r.len() == 6 && r.degree == 6, || {
            format!("4-tuple {k}: {} points", r.len())
        })?;
        ensure(r.max_residual() < RESIDUAL_TOL, || {
            format!("4-tuple {k}: residual {:e}", r.max_residual())
        })?;
        let pc = PointConfig::from_locus(&r).map_err(|e| e.to_string())?;
        let q = is_quadrilateral(&pc, INCIDENCE_TOL).map_err(|e| e.to_string())?;
        ensure(q.holds(), || format!("4-tuple {k}: not a quadrilateral"))?;
        real_counts[r.real_points().len()] += 1;
    }
    for k in 0..RANDOM_TUPLES {
        let mut rng = trial_rng(SEED, 1900 + k);
        let t = random_symmetric_tuple(&mut rng, 3, 5, 9);
        let r = solve_locus_p2(&t, SOLVER_TOL).map_err(|e| format!("5-tuple {k}: {e}"))?;
        ensure(r.is_empty(), || format!("5-tuple {k}: {} points", r.len()))?;
        let v = phase_retrieval_test(&t, SOLVER_TOL).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("5-tuple {k}: phase retrieval fails"))?;
    }
    Ok(format!(
        "50 quadrilaterals (real points per tuple: {} with 6, {} with 2, {} with 0), 50 empty 5-tuple loci",
        real_counts[6], real_counts[2], real_counts[0]
    ))
}

fn random_quadrilateral(k: usize) -> Vec<Vec<Rational>> {
    let mut rng = trial_rng(SEED, 1000 + k);
    loop {
        let lines: Vec<Vec<Rational>> = (0..4)
            .map(|_| deglab::locus::random_int_vector(&mut rng, 3, 6))
            .collect();
        let generic = deglab::pencil::combinations(4, 3).iter().all(|s| {
            let m = Mat::from_columns(&[lines[s[0]].clone(), lines[s[1]].clone(), lines[s[2]].clone()]).unwrap();
            !m.det().unwrap().is_zero()
        });
        if generic {
            return deglab::pencil::combinations(4, 2)
                .iter()
                .map(|p| deglab::exactlin::cross3(&lines[p[0]], &lines[p[1]]).unwrap().to_vec())
                .collect();
        }
    }
}

fn c10_round_trips() -> Outcome {
    let mut configs = vec![catalog::standard_six_points()];
    configs.extend((0..ROUND_TRIPS).map(random_quadrilateral));
    for (k, pts) in configs.iter().enumerate() {
        let pc = PointConfig::from_exact(pts.clone()).map_err(|e| e.to_string())?;
        let t = quadrilateral_to_matrices(&pc).map_err(|e| format!("config {k}: {e}"))?;
        let locus = compute_locus(&t, SOLVER_TOL).map_err(|e| format!("config {k}: {e}"))?;
        ensure(locus.is_exact(), || format!("config {k}: inexact locus"))?;
        let back = PointConfig::from_locus(&locus).map_err(|e| e.to_string())?;
        ensure(back.same_set(&pc), || format!("config {k}: point sets differ"))?;
    }
    for k in 0..ROUND_TRIPS {
        let mut rng = trial_rng(SEED, 2000 + k);
        let f = random_symmetric_family(&mut rng, 3, 5);
        let c = random_coefficients(&mut rng, 4, 5);
        let t = span_tuple(&f, &c).map_err(|e| e.to_string())?;
        let d = decompose_symmetric_tuple(&t, SOLVER_TOL).map_err(|e| format!("family {k}: {e}"))?;
        let Decomposition::Exact { family, coefficients } = d else {
            return Err(format!("family {k}: decomposition is not exact"));
        };
        let same = f.kernels().iter().all(|s| family.kernels().contains(s))
            && family.kernels().iter().all(|s| f.kernels().contains(s));
        ensure(same, || format!("family {k}: kernels differ"))?;
        ensure(span_tuple(&family, &coefficients).ok() == Some(t), || {
            format!("family {k}: tuple differs")
        })?;
    }
    Ok(format!(
        "{} recipe round trips, {ROUND_TRIPS} exact decompositions",
        configs.len()
    ))
}

fn c11_sylvester() -> Outcome {
    for m in 2..=4 {
        let ok = sylvester_derivative_check(m).map_err(|e| e.to_string())?;
        ensure(ok, || format!("identity fails for m = {m}"))?;
    }
    Ok("m = 2, 3, 4 exact".into())
}

fn minors_vanish(t: &MatrixTuple, s: &Subspace) -> Result<bool, String> {
    let minors = build_l(t).maximal_minors().map_err(|e| e.to_string())?;
    vanishes_on(&minors, s).map_err(|e| e.to_string())
}

fn c12_properties() -> Outcome {
    // GL-equivariance: X(A G) = G⁻¹ X(A)
    for k in 0..PROPERTY_TRIALS {
        let mut rng = trial_rng(SEED, 3000 + k);
        let m = 3 + k % 2;
        let f = random_family(&mut rng, m, 4);
        let c = random_coefficients(&mut rng, m + 1, 4);
        let g = random_invertible(&mut rng, m, 4);
        let ginv = g.inverse().map_err(|e| e.to_string())?;
        let t = span_tuple(&f, &c)
            .and_then(|t| t.right_multiply(&g))
            .map_err(|e| e.to_string())?;
        let moved = structured_locus(&f).map_err(|e| e.to_string())?;
        for s in moved.subspaces() {
            let image = s.image_under(&ginv).map_err(|e| e.to_string())?;
            ensure(minors_vanish(&t, &image)?, || format!("equivariance trial {k}"))?;
        }
        let direct = structured_locus(&f.right_multiply(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let expected: Vec<Subspace> = moved
            .subspaces()
            .iter()
            .map(|s| s.image_under(&ginv))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(direct.subspaces().iter().all(|s| expected.contains(s)), || {
            format!("equivariance trial {k}")
        })?;
    }
    // coefficient independence: the locus of the span does not depend on c
    for k in 0..PROPERTY_TRIALS {
        let mut rng = trial_rng(SEED, 4000 + k);
        let f = random_family(&mut rng, 3, 4);
        let c = random_coefficients(&mut rng, 4, 4);
        let t = span_tuple(&f, &c).map_err(|e| e.to_string())?;
        let exact =
            PointConfig::from_locus(&structured_locus(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let numeric = solve_locus_p2(&t, SOLVER_TOL).map_err(|e| format!("independence trial {k}: {e}"))?;
        let numeric = PointConfig::from_locus(&numeric).map_err(|e| e.to_string())?;
        ensure(numeric.same_set(&exact), || format!("independence trial {k}"))?;
    }
    // degree law: C(m+1, 2) components of projective dimension m - 3
    for m in 3..=5 {
        for k in 0..PROPERTY_TRIALS {
            let mut rng = trial_rng(SEED, 5000 + 100 * m + k);
            let f = random_family(&mut rng, m, 4);
            let c = random_coefficients(&mut rng, m + 1, 4);
            let locus = structured_locus(&f).map_err(|e| e.to_string())?;
            ensure(locus.degree == m * (m + 1) / 2, || {
                format!("m = {m}: degree {}", locus.degree)
            })?;
            ensure(
                locus.components.iter().all(|c| c.projective_dim == m as isize - 3),
                || format!("m = {m}: wrong component dimension"),
            )?;
            if k < 3 {
                let t = span_tuple(&f, &c).map_err(|e| e.to_string())?;
                for s in locus.subspaces() {
                    ensure(minors_vanish(&t, &s)?, || format!("m = {m}: component off the locus"))?;
                }
            }
        }
    }
    // sign invariance of the measurement map
    for k in 0..PROPERTY_TRIALS {
        let mut rng = trial_rng(SEED, 6000 + k);
        let t = random_symmetric_tuple(&mut rng, 3 + k % 3, 4 + k % 3, 9);
        let x = random_rational_vec(&mut rng, t.m());
        let y: Vec<Rational> = x.iter().map(|v| -v).collect();
        let (a, b) = (measurement(&t, &x), measurement(&t, &y));
        ensure(a.is_ok() && a == b, || format!("sign trial {k}"))?;
    }
    Ok(format!(
        "{PROPERTY_TRIALS} trials each: equivariance, independence, degree law (m = 3, 4, 5), sign"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("exact plane example", c1_example),
        ("pencil swap and Cayley cubic", c2_hilbert_burch),
        ("second symmetroid", c3_second_symmetroid),
        ("Cayley nodes", c4_nodes),
        ("fiber system", c5_fiber),
        ("dimension counts", c6_dimensions),
        ("cubic basis", c7_cubics),
        ("Desargues configuration", c8_desargues),
        ("numeric plane solver", c9_numeric),
        ("round trips", c10_round_trips),
        ("Sylvester identity", c11_sylvester),
        ("property suites", c12_properties),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({t:.2?})", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name}: {detail} ({t:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
