//! Properties of the intertwine construction checked on small instances.

mod common;

use common::{arb_matroid, small_fixtures};
use intertwine_core::constructions::{dual, free_coextension};
use intertwine_core::element_set::ElementSet;
use intertwine_core::fixtures;
use intertwine_core::intertwine::{
    block_sizes, construct_intertwine, derive_params, min_k, vertigan_basis_equality, Mode,
};
use intertwine_core::verification::{
    connectivity, is_cotransversal, is_transversal_mi, transversal_presentation_oracle, verify_intertwine,
};
use proptest::prelude::*;

#[test]
fn transversality_survives_free_coextension() {
    for (name, m) in small_fixtures(9) {
        if m.flats().len() > 20 {
            continue;
        }
        let before = is_transversal_mi(&m).unwrap().transversal();
        let after = is_transversal_mi(&free_coextension(&m, &["cx"]).unwrap()).unwrap().transversal();
        assert_eq!(before, after, "{name}");
    }
}

#[test]
fn antichain_test_matches_presentation_search_on_coextensions() {
    for (name, m) in small_fixtures(6) {
        let c = free_coextension(&m, &["cx"]).unwrap();
        if c.rank() > 4 {
            continue;
        }
        let mi = is_transversal_mi(&c).unwrap().transversal();
        assert_eq!(mi, transversal_presentation_oracle(&c).unwrap().is_some(), "{name} x cx");
    }
}

#[test]
fn cotransversal_pairs_give_cotransversal_intertwines() {
    let a = fixtures::pair_sum(2);
    let b = fixtures::uniform(2, 4).with_label_prefix("u");
    assert!(is_cotransversal(&a).unwrap() && is_cotransversal(&b).unwrap());
    let mut built = 0;
    for s1 in a.ground().subsets() {
        let Ok(p) = derive_params(&a, s1, &b, ElementSet::EMPTY, min_k(&a, s1, &b, ElementSet::EMPTY), Mode::Labelled)
        else {
            continue;
        };
        let m = construct_intertwine(&p).unwrap();
        assert!(is_transversal_mi(&m).unwrap().transversal());
        assert!(is_cotransversal(&m).unwrap());
        built += 1;
    }
    assert!(built > 0);
}

/// Every labelled tuple over the U-pair with at most 15 elements.
#[test]
fn labelled_intertwines_up_to_fifteen_elements() {
    let (m1, m2) = fixtures::u_pair();
    let mut verified = 0;
    for s1 in m1.ground().subsets() {
        for s2 in m2.ground().subsets() {
            let k0 = min_k(&m1, s1, &m2, s2);
            for k in k0..k0 + 3 {
                let Some((t1, t2)) = block_sizes(&m1, s1, &m2, s2, k) else {
                    continue;
                };
                if m1.ground_size() + m2.ground_size() + t1 + t2 > 15 {
                    continue;
                }
                let p = derive_params(&m1, s1, &m2, s2, k, Mode::Labelled).unwrap();
                assert!(p.hypotheses.labelled_theorem());
                let m = construct_intertwine(&p).unwrap();
                let r = verify_intertwine(&m, &m1, &m2, true).unwrap();
                assert!(r.verdict, "S1' = {s1:?}, S2' = {s2:?}, k = {k}\n{r}");
                verified += 1;
            }
        }
    }
    assert!(verified >= 20, "{verified}");
}

#[test]
fn factor_bases_intersect_to_bases_on_small_tuples() {
    let (m1, m2) = fixtures::u_pair();
    for (s1, s2) in [
        (ElementSet::EMPTY, ElementSet::EMPTY),
        (ElementSet::from_indices([0]), ElementSet::from_indices([2, 3])),
        (ElementSet::from_indices([0, 1]), ElementSet::EMPTY),
    ] {
        let p = derive_params(&m1, s1, &m2, s2, min_k(&m1, s1, &m2, s2), Mode::Labelled).unwrap();
        assert!(vertigan_basis_equality(&p).unwrap());
    }
}

#[test]
fn dual_tuple_rank_bound_is_equivalent() {
    let (m1, m2) = fixtures::u_pair();
    for s1 in m1.ground().subsets() {
        for s2 in m2.ground().subsets() {
            let k = min_k(&m1, s1, &m2, s2) + 1;
            let Ok(p) = derive_params(&m1, s1, &m2, s2, k, Mode::Labelled) else {
                continue;
            };
            let d = p.dual_params().unwrap();
            assert_eq!(min_k(&d.m1, d.s1_prime, &d.m2, d.s2_prime) <= d.k, min_k(&m1, s1, &m2, s2) <= k);
            assert!(dual(&construct_intertwine(&p).unwrap()).labelled_eq(&construct_intertwine(&d).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tutte_below_vertical_connectivity(m in arb_matroid(9, 11)) {
        let c = connectivity(&m).unwrap();
        prop_assert_eq!(c.rounded, c.kappa == m.rank());
        if !m.is_uniform() {
            prop_assert!(c.lambda.is_some_and(|l| l <= c.kappa));
        }
    }
}
