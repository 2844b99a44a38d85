mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use orbicalc_core::character::character_table;
use orbicalc_core::group::FiniteGroup;
use orbicalc_core::homs::enumerate_homs;
use orbicalc_core::linalg::{rank_q, QMatrix};
use orbicalc_core::matrep::{rotation_rep, MatrixRep};
use orbicalc_core::real::real_irreps;
use orbicalc_core::transversality::{
    derived_class_detector, fixed_subspace, isotypic_surjectivity, LinearChart, LinearMap, RepInput, Verdict,
};
use proptest::prelude::*;

/// Regular, coset and sign representations of a group.
fn representations(g: &Arc<FiniteGroup>) -> Vec<MatrixRep> {
    let mut out = vec![MatrixRep::trivial(g.clone(), 2), MatrixRep::regular(g.clone())];
    for class in g.subgroup_classes().unwrap() {
        out.push(MatrixRep::cosets(g.clone(), &class.representative).unwrap());
    }
    let c2 = FiniteGroup::cyclic(2).unwrap();
    for phi in enumerate_homs(g, &c2).unwrap() {
        out.push(MatrixRep::sign(g.clone(), &phi).unwrap());
    }
    out
}

#[test]
fn fixed_dimension_matches_character_on_corpus() {
    for (name, g) in common::corpus_groups(24) {
        let g = Arc::new(g);
        let t = character_table(&g).unwrap();
        for rep in representations(&g) {
            let chi = rep.character(&t).unwrap();
            let expected = t.integer_inner_product(&chi, t.character(0)).unwrap() as usize;
            assert_eq!(fixed_subspace(&rep, &t).unwrap().dimension, expected, "{name}");
        }
    }
}

#[test]
fn coset_fixed_space_is_one_dimensional() {
    // a transitive permutation representation has a one-dimensional fixed space
    let g = Arc::new(common::group("s4"));
    let t = character_table(&g).unwrap();
    for class in g.subgroup_classes().unwrap() {
        let rep = MatrixRep::cosets(g.clone(), &class.representative).unwrap();
        assert_eq!(fixed_subspace(&rep, &t).unwrap().dimension, 1);
    }
}

#[test]
fn float_rotation_has_no_fixed_vectors() {
    let rep = rotation_rep(5, 1).unwrap();
    let t = character_table(rep.group()).unwrap();
    assert_eq!(fixed_subspace(&rep, &t).unwrap().dimension, 0);
    let r = derived_class_detector(&t, RepInput::Matrices(&rep)).unwrap();
    assert_eq!((r.degree, r.verdict), (-2, Verdict::NonzeroCertified));
}

#[test]
fn float_chart_blocks() {
    let rep = rotation_rep(5, 1).unwrap();
    let real = real_irreps(rep.group()).unwrap();
    let chart = LinearChart::new(rep.clone(), rep, LinearMap::Approx(orbicalc_core::linalg::Matrix::identity(2))).unwrap();
    let report = isotypic_surjectivity(&chart, &real).unwrap();
    assert!(report.surjective && !report.exact);
    assert!(report.max_cross_block < 1e-9);
}

#[test]
fn schur_blocks_vanish_exactly() {
    for name in ["c3", "c4", "s3", "d8", "q8", "a4"] {
        let g = Arc::new(common::group(name));
        let real = real_irreps(&g).unwrap();
        let reps = representations(&g);
        let v = &reps[1];
        for e in &reps[2..] {
            let a = QMatrix::from_fn(e.dim(), v.dim(), |i, j| BigRational::from_integer(BigInt::from((i * 7 + j * 3) % 5) - 2));
            let chart = LinearChart::averaged(v.clone(), e.clone(), &a).unwrap();
            // cross blocks are checked inside; an error would mean a nonzero one
            let report = isotypic_surjectivity(&chart, &real).unwrap();
            assert_eq!(report.max_cross_block, 0.0);
            assert!(report.exact);
        }
    }
}

#[test]
fn detector_examples() {
    let c2 = Arc::new(common::group("c2"));
    let t = character_table(&c2).unwrap();
    let sign = MatrixRep::sign(c2.clone(), &orbicalc_core::morphism::Homomorphism::identity(&c2)).unwrap();
    let r = derived_class_detector(&t, RepInput::Matrices(&sign)).unwrap();
    assert_eq!((r.fixed_dim, r.degree, r.verdict), (0, -1, Verdict::NonzeroCertified));
    let triv = MatrixRep::trivial(c2.clone(), 1);
    assert_eq!(derived_class_detector(&t, RepInput::Matrices(&triv)).unwrap().verdict, Verdict::Inconclusive);
    // a sum of two reps without fixed vectors is still certified, in the summed degree
    let two = sign.direct_sum(&sign).unwrap();
    let r = derived_class_detector(&t, RepInput::Matrices(&two)).unwrap();
    assert_eq!((r.degree, r.verdict), (-2, Verdict::NonzeroCertified));
}

#[test]
fn detector_rejects_virtual_characters() {
    let c2 = common::group("c2");
    let t = character_table(&c2).unwrap();
    let virt: Vec<_> = t.character(0).iter().zip(t.character(1)).map(|(a, b)| a - b).collect();
    assert!(derived_class_detector(&t, RepInput::Character(&virt)).is_err());
}

fn averaged_automorphism(v: &MatrixRep, seed: &[i64]) -> Option<QMatrix> {
    let n = v.dim();
    let a = QMatrix::from_fn(n, n, |i, j| BigRational::from_integer(BigInt::from(seed[(i * n + j) % seed.len()])));
    let t = LinearChart::averaged(v.clone(), v.clone(), &a).ok()?;
    match t.alpha() {
        LinearMap::Exact(m) if rank_q(m) == n => Some(m.clone()),
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Pre- and post-composing α with equivariant automorphisms keeps the
    /// block ranks and the verdict.
    #[test]
    fn surjectivity_is_invariant_under_equivariant_isomorphisms(
        gi in 0usize..4,
        seed_a in prop::collection::vec(-3i64..4, 7),
        seed_v in prop::collection::vec(-3i64..4, 5),
        seed_e in prop::collection::vec(-3i64..4, 6),
    ) {
        let name = ["c3", "c4", "s3", "v4"][gi];
        let g = Arc::new(common::group(name));
        let real = real_irreps(&g).unwrap();
        let v = MatrixRep::regular(g.clone());
        let sub = g.subgroup_classes().unwrap();
        let e = MatrixRep::cosets(g.clone(), &sub[sub.len() / 2].representative).unwrap();
        let a = QMatrix::from_fn(e.dim(), v.dim(), |i, j| BigRational::from_integer(BigInt::from(seed_a[(i * 3 + j) % 7])));
        let chart = LinearChart::averaged(v.clone(), e.clone(), &a).unwrap();
        let tv = averaged_automorphism(&v, &seed_v);
        let te = averaged_automorphism(&e, &seed_e);
        prop_assume!(tv.is_some() && te.is_some());
        let LinearMap::Exact(alpha) = chart.alpha() else { unreachable!() };
        let moved = te.unwrap().matmul(alpha).matmul(&tv.unwrap());
        let chart2 = LinearChart::new(v, e, LinearMap::Exact(moved)).unwrap();
        let r1 = isotypic_surjectivity(&chart, &real).unwrap();
        let r2 = isotypic_surjectivity(&chart2, &real).unwrap();
        prop_assert_eq!(r1.blocks, r2.blocks);
        prop_assert_eq!(r1.surjective, r2.surjective);
    }
}
