mod common;

use orbicalc_core::group::FiniteGroup;
use orbicalc_core::homs::{enumerate_homs, hom_classes, pi1, rep_hom_classes};
use orbicalc_core::morphism::Homomorphism;
use orbicalc_core::stable_maps::{cross_check_abstract_enumeration, map_group, symmetry_witness, Variant};
use proptest::prelude::*;

fn pairs(max_g: usize, max_h: usize) -> Vec<((String, FiniteGroup), (String, FiniteGroup))> {
    let gs = common::corpus_groups(max_g);
    let hs = common::corpus_groups(max_h);
    gs.iter().flat_map(|g| hs.iter().map(move |h| (g.clone(), h.clone()))).collect()
}

#[test]
fn hom_counts_match_brute_force() {
    for ((gn, g), (hn, h)) in pairs(6, 8) {
        let homs = enumerate_homs(&g, &h).unwrap();
        assert_eq!(homs.len(), common::brute_force_hom_count(&g, &h), "{gn} -> {hn}");
        let classes = hom_classes(&g, &h).unwrap();
        let total: usize = classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, homs.len(), "orbit sum {gn} -> {hn}");
        for c in &classes {
            assert_eq!(c.orbit_size * c.centralizer_order, h.order());
            assert_eq!(pi1(&h, c).order(), c.centralizer_order);
        }
    }
}

#[test]
fn c2_into_s3_has_two_classes() {
    let classes = hom_classes(&common::group("c2"), &common::group("s3")).unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes.iter().filter(|c| c.injective).count(), 1);
}

#[test]
fn representable_identities() {
    for ((gn, g), (hn, h)) in pairs(8, 12) {
        let (inj, report) = rep_hom_classes(&g, &h).unwrap_or_else(|e| panic!("{gn} -> {hn}: {e}"));
        assert!(report.complement_identity && report.partition_identity);
        assert!(inj.iter().all(|c| c.representative.is_injective()));
    }
}

#[test]
fn stable_map_examples() {
    let t = common::group("trivial");
    let c2 = common::group("c2");
    assert_eq!(map_group(&t, &t, Variant::Rep).unwrap().rank, 1);
    assert_eq!(map_group(&c2, &c2, Variant::Rep).unwrap().rank, 3);
    assert_eq!(map_group(&c2, &c2, Variant::Orb).unwrap().rank, 5);
    // both legs injective: only the trivial subgroup of c2 maps injectively to the point
    assert_eq!(map_group(&c2, &t, Variant::Rep).unwrap().rank, 1);
    assert_eq!(map_group(&c2, &t, Variant::Orb).unwrap().rank, 3);
}

#[test]
fn rep_rank_bounded_by_orb_rank() {
    for ((gn, g), (hn, h)) in pairs(8, 8) {
        let rep = map_group(&g, &h, Variant::Rep).unwrap();
        let orb = map_group(&g, &h, Variant::Orb).unwrap();
        assert!(rep.rank <= orb.rank, "{gn} -> {hn}");
        assert_eq!(rep.classes.len(), 2 * rep.rank);
        for (i, &p) in rep.partner.iter().enumerate() {
            assert_ne!(p, i);
            assert_eq!(rep.partner[p], i);
        }
    }
}

#[test]
fn abstract_enumeration_and_symmetry() {
    for ((gn, g), (hn, h)) in pairs(8, 4) {
        for variant in [Variant::Rep, Variant::Orb] {
            let r = cross_check_abstract_enumeration(&g, &h, variant).unwrap();
            assert!(r.matches, "{gn} -> {hn} {variant}");
        }
        let (a, b) = symmetry_witness(&g, &h).unwrap();
        assert_eq!(a, b, "{gn} <-> {hn}");
    }
}

fn corpus_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    let n = common::corpus_groups(8).len();
    (0..n, 0..n, any::<usize>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Conjugating a homomorphism does not change its class.
    #[test]
    fn classes_are_conjugation_invariant((gi, hi, seed) in corpus_pair()) {
        let groups = common::corpus_groups(8);
        let (g, h) = (&groups[gi].1, &groups[hi].1);
        let homs = enumerate_homs(g, h).unwrap();
        let phi = &homs[seed % homs.len()];
        let x = (seed / homs.len().max(1)) % h.order();
        let conj = Homomorphism::new(g, h, g.elements().map(|a| h.conjugate(phi.apply(a), x)).collect()).unwrap();
        let a = orbicalc_core::homs::class_of(g, h, phi).unwrap();
        let b = orbicalc_core::homs::class_of(g, h, &conj).unwrap();
        prop_assert_eq!(a.representative, b.representative);
    }
}
