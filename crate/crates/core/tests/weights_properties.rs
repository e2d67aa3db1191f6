use bggcoh::bwb::{bott_dims, bwb_line_bundle};
use bggcoh::weights::{
    bgg_coset_reps, dot_action, dot_action_with_shift, gt_pattern_count, is_dominant,
    is_l_dominant, weyl_dim, Weight, WeylElement,
};
use proptest::prelude::*;

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(-6i64..=6, rank).prop_map(|v| Weight::new(v).unwrap())
}

fn element(rank: usize) -> impl Strategy<Value = WeylElement> {
    Just((0..rank).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| WeylElement::new(p).unwrap())
}

fn dominant(rank: usize) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(0i64..=3, rank).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::new(v).unwrap()
    })
}

fn rho(rank: usize) -> Weight {
    Weight::new((0..rank as i64).rev().collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dot_action_is_a_group_action(
        (v, w, chi) in (1usize..6).prop_flat_map(|r| (element(r), element(r), weight(r)))
    ) {
        let vw = v.compose(&w).unwrap();
        let lhs = dot_action(&vw, &chi).unwrap();
        let rhs = dot_action(&v, &dot_action(&w, &chi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = dot_action(&w.inverse(), &dot_action(&w, &chi).unwrap()).unwrap();
        prop_assert_eq!(back, chi.clone());
        prop_assert_eq!(dot_action(&WeylElement::identity(chi.rank()), &chi).unwrap(), chi);
    }

    #[test]
    fn shift_by_a_multiple_of_the_determinant_is_invisible(
        (w, chi) in (1usize..6).prop_flat_map(|r| (element(r), weight(r))),
        c in -4i64..=4,
    ) {
        let r = chi.rank();
        let shifted = rho(r).add(&Weight::new(vec![c; r]).unwrap()).unwrap();
        prop_assert_eq!(dot_action_with_shift(&w, &chi, &shifted).unwrap(), dot_action(&w, &chi).unwrap());
    }

    #[test]
    fn coset_representatives_give_l_dominant_weights(lambda in (2usize..6).prop_flat_map(dominant)) {
        prop_assert!(is_dominant(&lambda));
        for w in bgg_coset_reps(lambda.d()) {
            prop_assert!(is_l_dominant(&dot_action(&w, &lambda).unwrap()));
        }
    }

    #[test]
    fn weyl_dimension_counts_patterns(lambda in (1usize..5).prop_flat_map(dominant)) {
        prop_assert_eq!(weyl_dim(&lambda).unwrap(), gt_pattern_count(&lambda).unwrap());
    }

    #[test]
    fn serre_duality_on_the_flag_variety(mu in (1usize..5).prop_flat_map(weight)) {
        let r = mu.rank();
        let n = r * (r - 1) / 2;
        let dual = mu.scaled(-1).sub(&rho(r).scaled(2)).unwrap();
        let a = bwb_line_bundle(&mu).unwrap();
        let b = bwb_line_bundle(&dual).unwrap();
        for i in 0..=n {
            prop_assert_eq!(a.dim(i), b.dim(n - i));
        }
    }

    #[test]
    fn serre_duality_for_twisted_forms(d in 1usize..5, p in 0usize..5, k in -6i64..=6) {
        prop_assume!(p <= d);
        let a = bott_dims(p, k, d).unwrap();
        let b = bott_dims(d - p, -k, d).unwrap();
        for i in 0..=d {
            prop_assert_eq!(a.dim(i), b.dim(d - i));
        }
    }
}
