//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::VecDeque;

use orbicalc_core::corpus::Corpus;
use orbicalc_core::cyclotomic::{CycInt, CycRat};
use orbicalc_core::group::FiniteGroup;
use orbicalc_core::localize::{check_right_multiplicative, ArrowClass, FiniteCategory};

pub fn corpus() -> Corpus {
    Corpus::open_default().expect("bundled corpus")
}

pub fn corpus_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    corpus().groups_up_to(max_order).expect("corpus groups")
}

pub fn group(name: &str) -> FiniteGroup {
    corpus().group(name).expect("corpus group")
}

/// Counts homomorphisms by trying every assignment of images to a generating
/// set and closing the assignment over words in the generators.
pub fn brute_force_hom_count(g: &FiniteGroup, h: &FiniteGroup) -> usize {
    let gens = g.generating_set();
    let mut count = 0;
    let mut images = vec![0usize; gens.len()];
    loop {
        if extends(g, h, &gens, &images) {
            count += 1;
        }
        let mut i = 0;
        while i < images.len() {
            images[i] += 1;
            if images[i] < h.order() {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == images.len() {
            return count;
        }
    }
}

fn extends(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    // the closure only sees right multiplication by generators; check all products
    g.elements().all(|a| g.elements().all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

/// `Σ_g χ(g) conj(ψ(g))` summed over elements.
pub fn element_pairing(g: &FiniteGroup, chi: impl Fn(usize) -> CycInt, psi: impl Fn(usize) -> CycInt) -> CycRat {
    let mut total = CycInt::zero_in(1);
    for x in g.elements() {
        total = &total + &(&chi(x) * &psi(x).conj());
    }
    total.to_rational_field()
}

/// Frobenius-Schur indicator `(1/|G|) Σ χ(g²)` directly over elements.
pub fn fs_indicator(g: &FiniteGroup, chi: impl Fn(usize) -> CycInt) -> CycRat {
    let mut total = CycInt::zero_in(1);
    for x in g.elements() {
        total = &total + &chi(g.mul(x, x));
    }
    total.to_rational_field().scale(&num_rational::BigRational::new(1.into(), (g.order() as i64).into()))
}

/// Twenty small categories: posets, groups, monoids and a few hand-made ones.
pub fn synthetic_categories() -> Vec<(String, FiniteCategory)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("chain{n}"), FiniteCategory::from_poset(n, |i, j| i <= j).unwrap()));
    }
    out.push(("discrete3".into(), FiniteCategory::from_poset(3, |i, j| i == j).unwrap()));
    out.push(("span".into(), FiniteCategory::from_poset(3, |i, j| i == j || i == 0).unwrap()));
    out.push(("cospan".into(), FiniteCategory::from_poset(3, |i, j| i == j || j == 2).unwrap()));
    out.push(("diamond".into(), FiniteCategory::from_poset(4, |i, j| i == j || i == 0 || j == 3).unwrap()));
    out.push(("boolean2x2".into(), FiniteCategory::from_poset(4, |i, j| i & j == i).unwrap()));
    for n in 1..=4 {
        out.push((format!("c{n}"), FiniteCategory::from_group(&FiniteGroup::cyclic(n).unwrap()).unwrap()));
    }
    let v4 = FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(2).unwrap()).unwrap();
    out.push(("v4".into(), FiniteCategory::from_group(&v4).unwrap()));
    out.push(("idempotent".into(), FiniteCategory::from_monoid(&[vec![0, 1], vec![1, 1]]).unwrap()));
    // {1, a, 0} with a² = 0
    out.push(("nilpotent".into(), FiniteCategory::from_monoid(&[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap()));
    // left-zero semigroup {a, b} with a unit adjoined
    out.push((
        "left_zero".into(),
        FiniteCategory::from_monoid(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]).unwrap(),
    ));
    out.push(("parallel".into(), parallel_pair()));
    out.push(("iso".into(), iso_pair()));
    out.push(("equalized".into(), cancellation_counterexample()));
    assert_eq!(out.len(), 20);
    out
}

pub fn parallel_pair() -> FiniteCategory {
    FiniteCategory::new(vec!["0".into(), "1".into()], &[("p".into(), 0, 1), ("q".into(), 0, 1)], &[]).unwrap()
}

pub fn iso_pair() -> FiniteCategory {
    FiniteCategory::new(
        vec!["0".into(), "1".into()],
        &[("i".into(), 0, 1), ("j".into(), 1, 0)],
        &[("i", "j", "id_0"), ("j", "i", "id_1")],
    )
    .unwrap()
}

/// `f, g: C -> B` and `w: B -> D` with `w∘f = w∘g`.
pub fn cancellation_counterexample() -> FiniteCategory {
    FiniteCategory::new(
        vec!["C".into(), "B".into(), "D".into()],
        &[("f".into(), 0, 1), ("g".into(), 0, 1), ("w".into(), 1, 2), ("h".into(), 0, 2)],
        &[("f", "w", "h"), ("g", "w", "h")],
    )
    .unwrap()
}

/// `X -f-> D <-w- Y`.
pub fn ore_counterexample() -> FiniteCategory {
    FiniteCategory::new(
        vec!["X".into(), "Y".into(), "D".into()],
        &[("f".into(), 0, 2), ("w".into(), 1, 2)],
        &[],
    )
    .unwrap()
}

/// Six-vertex triangulation of the real projective plane.
pub fn rp2_facets() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ]
}

/// Arrow classes to try on a category: identities, all isomorphisms, and
/// identities plus each single arrow, keeping those that pass the checker.
pub fn candidate_systems(cat: &FiniteCategory) -> Vec<ArrowClass> {
    let ids: Vec<usize> = (0..cat.objects().len()).map(|o| cat.identity(o)).collect();
    let mut out = vec![ArrowClass::identities(cat)];
    let isos: Vec<usize> = (0..cat.arrow_count()).filter(|&a| cat.inverse(a).is_some()).collect();
    out.push(ArrowClass::from_indices(cat, &isos));
    for a in 0..cat.arrow_count() {
        let mut members = ids.clone();
        members.push(a);
        out.push(ArrowClass::from_indices(cat, &members));
    }
    out.push(ArrowClass::from_indices(cat, &(0..cat.arrow_count()).collect::<Vec<_>>()));
    out.into_iter().filter(|w| check_right_multiplicative(cat, w).valid).collect()
}
