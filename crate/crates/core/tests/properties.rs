//! Randomized property suites for the exact algebra, root isolation and
//! diagonalizability, plus thread-count independence of the CLI output.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn resultant_is_multiplicative(x in resultant_strategy()) {
        resultant_multiplicative(x)?;
    }

    #[test]
    fn bezout_certificates_expand_to_one(x in bezout_strategy()) {
        bezout_certificates(x)?;
    }

    #[test]
    fn crt_lift_satisfies_every_congruence(x in crt_strategy()) {
        crt_remainders(x)?;
    }

    #[test]
    fn sturm_counts_match_grid_sign_changes(x in sturm_strategy()) {
        sturm_vs_grid(x)?;
    }

    #[test]
    fn det_of_p_of_m_nonnegative_when_p_nonnegative_on_real_spectrum(x in det_positivity_strategy()) {
        det_positivity(x)?;
    }

    #[test]
    fn diagonalizability_matches_constructed_blocks(x in jordan_strategy()) {
        diagonalizable_vs_jordan(x)?;
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    for case in determinism_cases() {
        let one = otforge::cli::run_with(args(&case), Some(1));
        let four = otforge::cli::run_with(args(&case), Some(4));
        assert_eq!(one.code, 0, "{case:?}: {}", one.stderr);
        assert_eq!(one.stdout, four.stdout, "{case:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    for ex in ["j1", "jordan"] {
        let d1 = dir.path().join("one");
        let d4 = dir.path().join("four");
        std::fs::create_dir_all(&d1).unwrap();
        std::fs::create_dir_all(&d4).unwrap();
        assert_eq!(pipeline(ex, Some(1), &d1), pipeline(ex, Some(4), &d4), "{ex}");
    }
}
