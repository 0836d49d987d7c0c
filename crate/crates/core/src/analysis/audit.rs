//! Experiments on symmetric tuples in the span of rank-one matrices.

use serde::{Deserialize, Serialize};

use super::jacobian::{jacobian_rank_with, symmetric_tuple_dim, Parametrization};
use crate::config::is_generalized_desargues;
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Rational, Subspace};
use crate::locus::{
    decompose_symmetric_tuple, random_coefficients, random_symmetric_family, random_symmetric_tuple, span_tuple,
    structured_locus, vanishes_on, Decomposition,
};
use crate::par::{map_trials, trial_rng, Execution};
use crate::pencil::{build_l, MatrixTuple};
use crate::point::ProjPoint;

/// Entry bound of the random tuples and vectors.
const AUDIT_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub decomposed: bool,
    pub symmetric: bool,
    /// Number of real rank-one summands (plane case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_summands: Option<usize>,
    /// Whether `{ker E_i}` and `{ker E_iᵀ}` agree as sets (space case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_sets_equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub decomposed: usize,
    pub symmetric: usize,
    pub outcomes: Vec<TrialOutcome>,
    /// Rank of the symmetric-span parametrization (space case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_dim: Option<usize>,
    /// Dimension of the space of symmetric tuples (space case).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple_space_dim: Option<usize>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.decomposed == self.trials && self.symmetric == self.trials
    }
}

pub fn symmetric_span_audit(m: usize, trials: usize, seed: u64) -> Result<AuditReport> {
    symmetric_span_audit_with(m, trials, seed, Execution::default())
}

/// Plane case: random symmetric 4-tuples are decomposed into symmetric
/// rank-one summands. Space case: random spans of five symmetric rank-one
/// matrices have their summands recovered from the tuple and the line
/// configuration, and the summands come out symmetric; the dimension of such
/// spans is compared with that of all symmetric 5-tuples.
pub fn symmetric_span_audit_with(m: usize, trials: usize, seed: u64, exec: Execution) -> Result<AuditReport> {
    let outcomes = match m {
        3 => map_trials(trials, exec, |k| plane_trial(seed, k)),
        4 => map_trials(trials, exec, |k| space_trial(seed, k)),
        _ => return Err(Error::Unsupported(format!("the audit covers m = 3 and m = 4, got {m}"))),
    };
    let (span_dim, tuple_space_dim) = if m == 4 {
        let r = jacobian_rank_with(&Parametrization::SymmetricSpan { m }, 2, seed, exec)?;
        (Some(r.rank), Some(symmetric_tuple_dim(m, m + 1)))
    } else {
        (None, None)
    };
    Ok(AuditReport {
        m,
        trials,
        seed,
        decomposed: outcomes.iter().filter(|o| o.decomposed).count(),
        symmetric: outcomes.iter().filter(|o| o.symmetric).count(),
        outcomes,
        span_dim,
        tuple_space_dim,
    })
}

fn failed(trial: usize, e: Error) -> TrialOutcome {
    TrialOutcome {
        trial,
        decomposed: false,
        symmetric: false,
        real_summands: None,
        kernel_sets_equal: None,
        error: Some(e.to_string()),
    }
}

fn plane_trial(seed: u64, trial: usize) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let t = random_symmetric_tuple(&mut rng, 3, 4, AUDIT_BOUND);
    match decompose_symmetric_tuple(&t, 1e-8) {
        Ok(d) => {
            let symmetric = match &d {
                Decomposition::Exact { family, .. } => family.is_symmetric(),
                // every summand is v vᵀ; the fit residual carries the evidence
                Decomposition::Numeric { residual, .. } => *residual < crate::locus::DECOMPOSE_TOL,
            };
            let real = d.vectors().iter().filter(|v| v.is_real(crate::locus::REAL_TOL)).count();
            TrialOutcome {
                trial,
                decomposed: true,
                symmetric,
                real_summands: Some(real),
                kernel_sets_equal: None,
                error: None,
            }
        }
        Err(e) => failed(trial, e),
    }
}

fn space_trial(seed: u64, trial: usize) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let f = random_symmetric_family(&mut rng, 4, AUDIT_BOUND);
    let c = random_coefficients(&mut rng, 5, AUDIT_BOUND);
    let run = || -> Result<TrialOutcome> {
        let t = span_tuple(&f, &c)?;
        let lines = structured_locus(&f)?.subspaces();
        let summands = recover_summands(&t, &lines)?;
        let symmetric = summands.iter().all(Mat::is_symmetric);
        let kernels: Vec<Subspace> = summands.iter().map(Mat::kernel).collect();
        let co_kernels: Vec<Subspace> = summands.iter().map(|e| e.transpose().kernel()).collect();
        let equal = kernels.iter().all(|k| co_kernels.contains(k)) && co_kernels.iter().all(|k| kernels.contains(k));
        Ok(TrialOutcome {
            trial,
            decomposed: true,
            symmetric,
            real_summands: None,
            kernel_sets_equal: Some(equal),
            error: None,
        })
    };
    run().unwrap_or_else(|e| failed(trial, e))
}

/// Rank-one matrices `E_j` in the span of the tuple, one per hyperplane of
/// the Desargues-type configuration formed by `lines`: `E_j` is the unique
/// (up to scale) combination of the `A_i` that kills the hyperplane. Each
/// line is first checked to lie on the locus of `t`.
pub fn recover_summands(t: &MatrixTuple, lines: &[Subspace]) -> Result<Vec<Mat>> {
    let m = t.m();
    let minors = build_l(t).maximal_minors()?;
    for s in lines {
        if !vanishes_on(&minors, s)? {
            return Err(Error::input("a subspace is not contained in the locus"));
        }
    }
    let report = is_generalized_desargues(lines, m)?;
    if !report.holds() {
        return Err(Error::SolverFailure("lines are not in Desargues-type position".into()));
    }
    report
        .hyperplanes
        .iter()
        .map(|h| {
            let ProjPoint::Exact(normal) = h else {
                return Err(Error::SolverFailure("numeric hyperplane".into()));
            };
            let plane = Subspace::hyperplane(normal);
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for b in plane.basis_vectors() {
                let images = t.matrices().iter().map(|a| a.mul_vec(&b)).collect::<Result<Vec<_>>>()?;
                for i in 0..m {
                    rows.push(images.iter().map(|v| v[i].clone()).collect());
                }
            }
            let ker = Mat::from_rows(rows)?.kernel();
            if ker.dim() != 1 {
                return Err(Error::KernelDimension {
                    expected: 1,
                    found: ker.dim(),
                });
            }
            let u = &ker.basis_vectors()[0];
            let mut e = Mat::zeros(m, m);
            for (a, ui) in t.matrices().iter().zip(u) {
                e = e.add(&a.scale(ui))?;
            }
            if e.rank() != 1 {
                return Err(Error::SolverFailure(format!("recovered summand has rank {}", e.rank())));
            }
            Ok(e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::locus::{RankOneFamily, SpanCoefficients};

    #[test]
    fn plane_audit() {
        let r = symmetric_span_audit(3, 6, 4).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn space_audit() {
        let r = symmetric_span_audit(4, 3, 4).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.outcomes.iter().all(|o| o.kernel_sets_equal == Some(true)));
        assert_eq!(r.span_dim, Some(40));
        assert_eq!(r.tuple_space_dim, Some(50));
    }

    #[test]
    fn recovers_sylvester_summands() {
        let f = RankOneFamily::symmetric(&catalog::sylvester_vectors(4)).unwrap();
        let t = span_tuple(&f, &SpanCoefficients::identity(5)).unwrap();
        let lines = structured_locus(&f).unwrap().subspaces();
        let es = recover_summands(&t, &lines).unwrap();
        assert_eq!(es.len(), 5);
        let mut want: Vec<Subspace> = f.kernels().to_vec();
        let mut got: Vec<Subspace> = es.iter().map(Mat::kernel).collect();
        want.sort_by_key(|s| format!("{s:?}"));
        got.sort_by_key(|s| format!("{s:?}"));
        assert_eq!(got, want);
    }

    #[test]
    fn other_dimensions_unsupported() {
        assert!(symmetric_span_audit(5, 1, 0).is_err());
    }
}
