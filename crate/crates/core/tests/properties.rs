mod common;

use common::*;
use proptest::collection::vec;
use proptest::prelude::*;

fn letters(gens: usize, max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    vec((0..gens, any::<bool>()), 0..max)
}

fn sl2_params() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    vec((-4i64..=4, -4i64..=4, 1i64..=3), 1..3)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    vec(-5i64..=5, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_fundamental_identity(
        gens in 1usize..4,
        w in letters(3, 10),
        ps in vec(sl2_params(), 3),
    ) {
        let mats: Vec<_> = ps.iter().take(gens).map(|p| sl2(p)).collect();
        prop_assert!(fox_identity(&word(&w, gens), gens, &mats));
    }

    #[test]
    fn sym_power_is_a_homomorphism(a in sl2_params(), b in sl2_params(), n in 1usize..=8) {
        prop_assert!(sym_power_homomorphism(&sl2(&a), &sl2(&b), n));
    }

    #[test]
    fn clebsch_gordan_traces(a in sl2_params(), n in 2usize..=6) {
        prop_assert!(clebsch_gordan(&sl2(&a), n));
    }

    #[test]
    fn number_field_arithmetic(a in coeffs(), b in coeffs(), c in coeffs()) {
        prop_assert!(field_arithmetic(&a, &b, &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fox_product_rule_holds(u in letters(2, 8), v in letters(2, 8), ps in vec(sl2_params(), 2)) {
        let mats: Vec<_> = ps.iter().map(|p| sl2(p)).collect();
        prop_assert!(fox_product_rule(&word(&u, 2), &word(&v, 2), 2, &mats));
    }

    #[test]
    fn rank_of_transpose(rows in 1usize..6, cols in 1usize..6, k in 1usize..4, es in vec(-9i64..=9, 1..30)) {
        prop_assert!(rank_transpose(&low_rank_matrix(rows, cols, k, &es)));
        prop_assert!(rank_transpose(&int_matrix(rows, cols, &es)));
    }

    #[test]
    fn scalar_twisted_cohomology(knot in 0usize..5, num in -6i64..=6, den in 1i64..=4) {
        prop_assert!(scalar_cohomology(SMALL_KNOTS[knot], num, den));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugation_preserves_dimensions(trefoil in any::<bool>(), n in 2usize..=4, g in sl2_params()) {
        prop_assert!(conjugation_invariance(trefoil, n, &g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn backends_agree_on_rank(rows in 1usize..5, cols in 1usize..5, k in 1usize..3, es in vec(-9i64..=9, 1..20)) {
        prop_assert!(backend_agreement(&low_rank_matrix(rows, cols, k, &es)));
    }

    #[test]
    fn trefoil_invariants_do_not_depend_on_the_presentation(moves in vec((0u8..4, any::<bool>()), 0..4)) {
        prop_assert!(presentation_independence(&moves));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn obstructions_are_conjugation_invariant(k in 2usize..=3, g in sl2_params()) {
        prop_assert!(obstruction_naturality(3, k, &g));
    }
}
