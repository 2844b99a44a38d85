mod common;

use num_bigint::BigInt;
use orbicalc_core::localize::{
    check_filtered, check_right_multiplicative, localize_hom, verify_universal_property, ArrowClass, FiniteCategory,
    RmsViolation,
};
use orbicalc_core::nerve::{
    cell_census, homology, nerve_chain_complex, simplicial_chain_complex, ChainMode, QuotientCategory,
};
use proptest::prelude::*;

#[test]
fn truncated_nerves_are_acyclic() {
    let groups = common::corpus_groups(8);
    for n in 1..=8 {
        let cat = QuotientCategory::build(&groups, n).unwrap();
        for k in 1..=4 {
            let census = cell_census(&cat, k, ChainMode::ProperInjections).unwrap();
            let h = homology(&nerve_chain_complex(&cat, &census).unwrap());
            assert_eq!((h[0].betti, h[0].torsion.len()), (1, 0), "N={n} k={k}");
            for hi in &h[1..k] {
                assert!(hi.is_zero(), "N={n} k={k} degree {}", hi.degree);
            }
        }
    }
}

#[test]
fn census_in_low_orders() {
    let groups = common::corpus_groups(4);
    let cat = QuotientCategory::build(&groups, 2).unwrap();
    assert_eq!(cell_census(&cat, 3, ChainMode::ProperInjections).unwrap().counts(), vec![2, 1, 0, 0]);
    let h = homology(&nerve_chain_complex(&cat, &cell_census(&cat, 3, ChainMode::ProperInjections).unwrap()).unwrap());
    assert_eq!(h[0].betti, 1);
    assert!(h[1..3].iter().all(|x| x.is_zero()));
}

#[test]
fn simplicial_oracles() {
    let h = homology(&simplicial_chain_complex(&common::rp2_facets()).unwrap());
    assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
    assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 0));
    // boundary of the tetrahedron
    let sphere: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    let h = homology(&simplicial_chain_complex(&sphere).unwrap());
    assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 1));
    // circle
    let h = homology(&simplicial_chain_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap());
    assert_eq!((h[0].betti, h[1].betti), (1, 1));
}

#[test]
fn identities_only_reproduces_homs() {
    for (name, cat) in common::synthetic_categories() {
        let w = ArrowClass::identities(&cat);
        assert!(check_right_multiplicative(&cat, &w).valid, "{name}");
        for x in 0..cat.objects().len() {
            for y in 0..cat.objects().len() {
                let classes = localize_hom(&cat, &w, x, y).unwrap();
                let got: Vec<usize> = classes.iter().map(|c| c.representative.1).collect();
                assert_eq!(got, cat.homs(x, y), "{name} {x} -> {y}");
                assert!(classes.iter().all(|c| c.members.len() == 1));
            }
        }
    }
}

#[test]
fn ore_witness() {
    let cat = common::ore_counterexample();
    let names: Vec<String> = ["id_X", "id_Y", "id_D", "w"].iter().map(|s| s.to_string()).collect();
    let w = ArrowClass::from_names(&cat, &names).unwrap();
    let v = check_right_multiplicative(&cat, &w);
    let wi = cat.arrow_by_name("w").unwrap();
    let fi = cat.arrow_by_name("f").unwrap();
    assert_eq!(v.violation, Some(RmsViolation::Ore { w: wi, f: fi }));
}

#[test]
fn cancellation_witness() {
    let cat = common::cancellation_counterexample();
    let names: Vec<String> = ["id_C", "id_B", "id_D", "w"].iter().map(|s| s.to_string()).collect();
    let w = ArrowClass::from_names(&cat, &names).unwrap();
    match check_right_multiplicative(&cat, &w).violation {
        Some(RmsViolation::Cancellability { .. }) => {}
        other => panic!("expected a cancellability witness, got {other:?}"),
    }
    assert!(localize_hom(&cat, &w, 0, 1).is_err());
}

#[test]
fn universal_property_on_small_instances() {
    let mut checked = 0;
    for (name, cat) in common::synthetic_categories() {
        if cat.arrow_count() > 12 {
            continue;
        }
        for w in common::candidate_systems(&cat) {
            for x in 0..cat.objects().len() {
                assert!(check_filtered(&cat, &w, x), "{name}");
                for y in 0..cat.objects().len() {
                    assert!(verify_universal_property(&cat, &w, x, y).unwrap(), "{name} {x} -> {y}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn inverting_an_arrow_of_the_chain() {
    let cat = FiniteCategory::from_poset(3, |i, j| i <= j).unwrap();
    let b = cat.arrow_by_name("1<2").unwrap();
    let w = ArrowClass::from_indices(&cat, &[0, 1, 2, b]);
    assert!(check_right_multiplicative(&cat, &w).valid);
    // 2 -> 1 exists after inverting 1<2
    assert_eq!(localize_hom(&cat, &w, 2, 1).unwrap().len(), 1);
    assert_eq!(localize_hom(&cat, &w, 2, 0).unwrap().len(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Random down-closed orders on 0..n: inverting everything collapses each
    /// connected component, and the localized hom-sets have at most one class.
    #[test]
    fn posets_localize_to_at_most_one_class(n in 1usize..5, bits in any::<u16>()) {
        let rel = |i: usize, j: usize| i == j || (i < j && bits >> (i * 4 + j) & 1 == 1);
        // take the transitive closure so the relation is a partial order
        let mut le = vec![vec![false; n]; n];
        for i in 0..n { for j in 0..n { le[i][j] = rel(i, j); } }
        for k in 0..n { for i in 0..n { for j in 0..n { if le[i][k] && le[k][j] { le[i][j] = true; } } } }
        let cat = FiniteCategory::from_poset(n, |i, j| le[i][j]).unwrap();
        let w = ArrowClass::identities(&cat);
        for x in 0..n {
            for y in 0..n {
                let c = localize_hom(&cat, &w, x, y).unwrap();
                prop_assert_eq!(c.len(), usize::from(le[x][y]));
            }
        }
    }
}
