use proptest::prelude::*;

use deglab::analysis::{
    finite_difference_check, injective_at, jacobian_rank, measurement, phase_retrieval_test, phase_retrieval_test_span,
    random_unit_vectors, Parametrization,
};
use deglab::exactlin::Rational;
use deglab::locus::{
    random_coefficients, random_int_vector, random_symmetric_family, random_symmetric_tuple, span_tuple,
};
use deglab::par::trial_rng;
use deglab::pencil::MatrixTuple;

const TOL: f64 = 1e-8;
const UNIT_VECTORS: usize = 1000;

fn parametrization() -> impl Strategy<Value = Parametrization> {
    prop_oneof![
        (1usize..=3, 1usize..=4).prop_map(|(m, r)| Parametrization::SymmetroidCoeffs { m, r }),
        (2usize..=3).prop_map(|m| Parametrization::RankOneSpan { m }),
        (2usize..=3).prop_map(Parametrization::fixed_kernels),
        (2usize..=3).prop_map(|m| Parametrization::SymmetricSpan { m }),
    ]
}

fn check_consistency(t: &MatrixTuple, seed: u64) -> Result<(), TestCaseError> {
    let v = phase_retrieval_test(t, TOL).unwrap();
    prop_assert_eq!(v.holds, v.witnesses.is_empty());
    for w in v.witness_points() {
        prop_assert!(!injective_at(t, &w).unwrap());
    }
    if v.holds {
        for x in random_unit_vectors(t.m(), UNIT_VECTORS, seed) {
            prop_assert!(injective_at(t, &x).unwrap());
        }
    }
    Ok(())
}

#[test]
fn finite_differences_match_exact_jacobian() {
    let err = finite_difference_check(3, 4, 3, 11, 1e-5).unwrap();
    assert!(err < 1e-6, "relative error {err}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn per_trial_ranks_are_bounded(p in parametrization(), seed in any::<u64>()) {
        let r = jacobian_rank(&p, 2, seed).unwrap();
        let cap = r.domain_dim.min(r.codomain_dim);
        prop_assert!(r.ranks_per_trial.iter().all(|&k| k <= cap && k <= r.rank));
        prop_assert_eq!(r.projective_dim + 1, r.rank);
    }

    #[test]
    fn verdicts_agree_with_injectivity_for_random_tuples(r in 4usize..=5, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let t = random_symmetric_tuple(&mut rng, 3, r, 9);
        check_consistency(&t, seed)?;
    }

    #[test]
    fn verdicts_agree_with_injectivity_for_spans(m in 3usize..=4, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let f = random_symmetric_family(&mut rng, m, 5);
        let c = random_coefficients(&mut rng, m + 1, 5);
        let t = span_tuple(&f, &c).unwrap();
        let v = phase_retrieval_test_span(&f, &c).unwrap();
        prop_assert!(!v.holds);
        for w in v.witness_points() {
            prop_assert!(!injective_at(&t, &w).unwrap());
        }
        if m == 3 {
            check_consistency(&t, seed)?;
        }
    }

    #[test]
    fn measurement_is_even(m in 1usize..=5, r in 1usize..=6, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let t = random_symmetric_tuple(&mut rng, m, r, 9);
        let x = random_int_vector(&mut rng, m, 50);
        let y: Vec<Rational> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(measurement(&t, &x).unwrap(), measurement(&t, &y).unwrap());
    }
}
