mod common;

use proptest::prelude::*;

use common::props::*;

proptest! {
    #![proptest_config(common::seeded(200))]

    #[test]
    fn yun_squarefree_decomposition((factors, c) in yun_input()) {
        yun_reconstructs_and_is_coprime(&factors, c)?;
    }

    #[test]
    fn print_then_parse(e in expr()) {
        print_then_parse_is_identity(&e)?;
    }
}

proptest! {
    #![proptest_config(common::seeded(100))]

    #[test]
    fn resultant_against_sylvester((a, b) in resultant_pair()) {
        resultant_matches_sylvester(&a, &b)?;
    }

    #[test]
    fn tracing_index_by_degree_and_gcd((x, y, w, inner) in traced_curve()) {
        tracing_index_methods_agree(&x, &y, &w, &inner)?;
    }

    #[test]
    fn tracing_index_under_mobius((x, y, m) in mobius_input()) {
        tracing_index_is_mobius_invariant(&x, &y, m)?;
    }

    #[test]
    fn normalize_idempotent(x in uni_coeffs(4), y in uni_coeffs(4), w in uni_coeffs(3)) {
        normalize_is_idempotent(&x, &y, &w)?;
    }

    #[test]
    fn content_identity(c in uni_coeffs(2), k in 1i64..=5, coeffs in prop::collection::vec(bivariate(2), 1..=3)) {
        content_times_primitive_is_identity(&c, k, coeffs)?;
    }
}

#[test]
fn sylvester_oracle_on_a_known_pair() {
    // Res(t^2 - 1, t - 2) = (2 - 1)(2 + 1)
    assert_eq!(
        sylvester(&[-1, 0, 1], &[-2, 1]),
        num_rational::BigRational::from_integer(3.into())
    );
}
