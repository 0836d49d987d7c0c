//! Phase retrieval tests, Jacobian-rank dimension estimates and audits of
//! symmetric rank-one spans.

pub mod audit;
pub mod jacobian;
pub mod pr;

pub use audit::{recover_summands, symmetric_span_audit, symmetric_span_audit_with, AuditReport, TrialOutcome};
pub use jacobian::{
    finite_difference_check, jacobian_rank, jacobian_rank_with, symmetroid_jacobian, JacobianReport, Parametrization,
};
pub use pr::{
    injective_at, measurement, phase_retrieval_test, phase_retrieval_test_span, random_unit_vectors, PRVerdict,
    PrMethod,
};
