//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p orbicalc --test acceptance -- --nocapture` to see
//! the report. The test fails on any failing sub-check that is not listed in
//! `KNOWN_DEVIATIONS`, and also when a listed one starts passing.

mod common;
#[path = "../../core/tests/common/mod.rs"]
mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use orbicalc_core::character::character_table;
use orbicalc_core::cyclotomic::{CycInt, CycRat};
use orbicalc_core::group::FiniteGroup;
use orbicalc_core::homs::{enumerate_homs, hom_classes, rep_hom_classes};
use orbicalc_core::linalg::QMatrix;
use orbicalc_core::localize::{
    check_filtered, check_right_multiplicative, localize_hom, verify_universal_property, ArrowClass, RmsViolation,
};
use orbicalc_core::matrep::MatrixRep;
use orbicalc_core::morphism::Homomorphism;
use orbicalc_core::nerve::{cell_census, homology, nerve_chain_complex, simplicial_chain_complex, ChainMode, QuotientCategory};
use orbicalc_core::real::{real_irreps, EndType};
use orbicalc_core::stable_maps::{cross_check_abstract_enumeration, map_group, symmetry_witness, Variant};
use orbicalc_core::transversality::{derived_class_detector, fixed_subspace, isotypic_surjectivity, LinearChart, RepInput, Verdict};

/// Sub-checks that fail by design. Each one is a conflict between two
/// requirements that cannot both hold; the implemented reading is the one
/// consistent with the remaining checks.
const KNOWN_DEVIATIONS: &[(u8, &str)] = &[(5, "rank(c2, trivial, rep) = 3")];

/// Exact comparisons everywhere except the floating-point chart, which uses this.
const FLOAT_TOL: f64 = 1e-9;

struct Check {
    label: String,
    pass: bool,
    detail: String,
}

fn check(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { label: label.into(), pass, detail: detail.into() }
}

fn rat(n: i64) -> CycRat {
    CycRat::from_coeff(1, BigRational::from_integer(n.into()))
}

fn criterion_1() -> Vec<Check> {
    let groups = oracles::corpus_groups(24);
    let mut failures = Vec::new();
    for (name, g) in &groups {
        let t = character_table(g).unwrap();
        let n = g.order() as i64;
        for i in 0..t.len() {
            for j in 0..t.len() {
                let p = oracles::element_pairing(g, |x| t.value_at(i, x).clone(), |x| t.value_at(j, x).clone());
                if p != rat(if i == j { n } else { 0 }) {
                    failures.push(format!("{name}: rows {i},{j}"));
                }
            }
        }
        let classes = t.classes();
        for k in 0..classes.len() {
            for l in 0..classes.len() {
                let mut s = CycInt::zero_in(1);
                for i in 0..t.len() {
                    s = &s + &(&t.character(i)[k] * &t.character(i)[l].conj());
                }
                let z = g.centralizer(&[classes.representative(k)]).order() as i64;
                if s.to_rational_field() != rat(if k == l { z } else { 0 }) {
                    failures.push(format!("{name}: columns {k},{l}"));
                }
            }
        }
        if t.degrees().iter().map(|d| d * d).sum::<usize>() != g.order() {
            failures.push(format!("{name}: sum of squared degrees"));
        }
    }
    vec![
        check("at least 25 groups of order <= 24", groups.len() >= 25, format!("{} groups", groups.len())),
        check("orthogonality and degree sum, zero tolerance", failures.is_empty(), failures.join("; ")),
    ]
}

fn criterion_2() -> Vec<Check> {
    let groups = oracles::corpus_groups(usize::MAX);
    let mut bad_indicator = Vec::new();
    let mut bad_sum = Vec::new();
    for (name, g) in &groups {
        let real = real_irreps(g).unwrap();
        let t = real.character_table();
        for i in 0..t.len() {
            let nu = real.indicators()[i];
            let oracle = oracles::fs_indicator(g, |x| t.value_at(i, x).clone());
            if !(-1..=1).contains(&nu) || oracle != rat(nu as i64) {
                bad_indicator.push(format!("{name}[{i}]"));
            }
        }
        let total: usize = real.entries().iter().map(|e| e.real_dim * e.real_dim / e.end_type.dim()).sum();
        if total != g.order() {
            bad_sum.push(name.clone());
        }
    }
    let q8 = real_irreps(&oracles::group("q8")).unwrap();
    let h_count = q8.entries().iter().filter(|e| e.end_type == EndType::H).count();
    vec![
        check(
            "indicators in {-1,0,1}, equal to the element sum",
            bad_indicator.is_empty(),
            format!("{} groups; {}", groups.len(), bad_indicator.join(" ")),
        ),
        check("sum of dim^2 / dim End = |G|", bad_sum.is_empty(), bad_sum.join(" ")),
        check("q8 has exactly one H-type entry", h_count == 1, format!("{h_count}")),
    ]
}

fn pairs(max_g: usize, max_h: usize) -> Vec<((String, FiniteGroup), (String, FiniteGroup))> {
    let gs = oracles::corpus_groups(max_g);
    let hs = oracles::corpus_groups(max_h);
    gs.iter().flat_map(|g| hs.iter().map(move |h| (g.clone(), h.clone()))).collect()
}

fn criterion_3() -> Vec<Check> {
    let ps = pairs(6, 8);
    let mut count_fail = Vec::new();
    let mut orbit_fail = Vec::new();
    for ((gn, g), (hn, h)) in &ps {
        let homs = enumerate_homs(g, h).unwrap();
        if homs.len() != oracles::brute_force_hom_count(g, h) {
            count_fail.push(format!("{gn}->{hn}"));
        }
        // |Hom| = Σ [H : Z_H(im φ)] over classes, with the centralizer recomputed here
        let total: usize = hom_classes(g, h)
            .unwrap()
            .iter()
            .map(|c| {
                let image: Vec<usize> = g.elements().map(|x| c.representative.apply(x)).collect();
                h.order() / h.centralizer(&image).order()
            })
            .sum();
        if total != homs.len() {
            orbit_fail.push(format!("{gn}->{hn}"));
        }
    }
    vec![
        check("enumeration matches brute force", count_fail.is_empty(), format!("{} pairs; {}", ps.len(), count_fail.join(" "))),
        check("orbit-stabilizer identity", orbit_fail.is_empty(), orbit_fail.join(" ")),
    ]
}

fn criterion_4() -> Vec<Check> {
    let ps = pairs(8, 12);
    let mut a_fail = Vec::new();
    let mut b_fail = Vec::new();
    for ((gn, g), (hn, h)) in &ps {
        match rep_hom_classes(g, h) {
            Ok((_, report)) => {
                if !report.complement_identity {
                    a_fail.push(format!("{gn}->{hn}"));
                }
                if !report.partition_identity {
                    b_fail.push(format!("{gn}->{hn}"));
                }
            }
            Err(e) => a_fail.push(format!("{gn}->{hn}: {e}")),
        }
    }
    vec![
        check("identity (a): injective classes = classes not factoring through a proper quotient", a_fail.is_empty(), format!("{} pairs; {}", ps.len(), a_fail.join(" "))),
        check("identity (b): sum over normal N of injective classes G/N -> H = all classes", b_fail.is_empty(), b_fail.join(" ")),
    ]
}

fn criterion_5() -> Vec<Check> {
    let t = oracles::group("trivial");
    let c2 = oracles::group("c2");
    let r_tt = map_group(&t, &t, Variant::Rep).unwrap().rank;
    let r_ct = map_group(&c2, &t, Variant::Rep).unwrap().rank;

    let mut bound_fail = Vec::new();
    let small = pairs(8, 8);
    for ((gn, g), (hn, h)) in &small {
        let rep = map_group(g, h, Variant::Rep).unwrap().rank;
        let orb = map_group(g, h, Variant::Orb).unwrap().rank;
        if rep > orb {
            bound_fail.push(format!("{gn}->{hn}"));
        }
    }

    // every G of order <= 12 against every H of order <= 12
    let cross = pairs(12, 12);
    let mut cross_fail = Vec::new();
    let mut sym_fail = Vec::new();
    for ((gn, g), (hn, h)) in &cross {
        for variant in [Variant::Rep, Variant::Orb] {
            if !cross_check_abstract_enumeration(g, h, variant).unwrap().matches {
                cross_fail.push(format!("{gn}->{hn} {variant}"));
            }
        }
        let (a, b) = symmetry_witness(g, h).unwrap();
        if a != b {
            sym_fail.push(format!("{gn}<->{hn}: {a} vs {b}"));
        }
    }
    vec![
        check("rank(trivial, trivial, rep) = 1", r_tt == 1, format!("{r_tt}")),
        check(
            "rank(c2, trivial, rep) = 3",
            r_ct == 3,
            format!("got {r_ct}; 3 is the orb rank, and rep rank 3 would break the symmetry with rank(trivial, c2, rep) = 1"),
        ),
        check("rep rank <= orb rank, |G|,|H| <= 8", bound_fail.is_empty(), format!("{} pairs; {}", small.len(), bound_fail.join(" "))),
        check(
            "abstract enumeration cross-check, |G|,|H| <= 12",
            cross_fail.is_empty(),
            format!("{} pairs; {}", cross.len(), cross_fail.join(" ")),
        ),
        check("two-leg symmetry witness on the tested pairs", sym_fail.is_empty(), sym_fail.join(" ")),
    ]
}

fn criterion_6() -> Vec<Check> {
    let groups = oracles::corpus_groups(8);
    let mut fail = Vec::new();
    for n in 1..=8 {
        let cat = QuotientCategory::build(&groups, n).unwrap();
        for k in 1..=4 {
            let census = cell_census(&cat, k, ChainMode::ProperInjections).unwrap();
            let h = homology(&nerve_chain_complex(&cat, &census).unwrap());
            let ok = h[0].betti == 1 && h[0].torsion.is_empty() && h[1..k].iter().all(|x| x.is_zero());
            if !ok {
                fail.push(format!("N={n} k={k}"));
            }
        }
    }
    let rp2 = homology(&simplicial_chain_complex(&oracles::rp2_facets()).unwrap());
    let rp2_ok = rp2[1].betti == 0 && rp2[1].torsion == vec![BigInt::from(2)];
    vec![
        check("H0 = Z and H_i = 0 for 1 <= i < k, all N <= 8, k <= 4", fail.is_empty(), fail.join(" ")),
        check("H1(RP^2) = Z/2", rp2_ok, format!("betti {}, torsion {:?}", rp2[1].betti, rp2[1].torsion)),
    ]
}

fn criterion_7() -> Vec<Check> {
    let cats = oracles::synthetic_categories();
    let mut id_fail = Vec::new();
    for (name, cat) in &cats {
        let w = ArrowClass::identities(cat);
        for x in 0..cat.objects().len() {
            for y in 0..cat.objects().len() {
                let classes = localize_hom(cat, &w, x, y).unwrap();
                let got: Vec<usize> = classes.iter().map(|c| c.representative.1).collect();
                if got != cat.homs(x, y) || classes.iter().any(|c| c.members.len() != 1) {
                    id_fail.push(format!("{name} {x}->{y}"));
                }
            }
        }
    }

    let ore = oracles::ore_counterexample();
    let names: Vec<String> = ["id_X", "id_Y", "id_D", "w"].iter().map(|s| s.to_string()).collect();
    let w = ArrowClass::from_names(&ore, &names).unwrap();
    let violation = check_right_multiplicative(&ore, &w).violation;
    let expected = RmsViolation::Ore { w: ore.arrow_by_name("w").unwrap(), f: ore.arrow_by_name("f").unwrap() };

    let mut instances = 0;
    let mut up_fail = Vec::new();
    for (name, cat) in &cats {
        if cat.arrow_count() > 12 {
            continue;
        }
        for w in oracles::candidate_systems(cat) {
            for x in 0..cat.objects().len() {
                if !check_filtered(cat, &w, x) {
                    up_fail.push(format!("{name}: not filtered at {x}"));
                }
                for y in 0..cat.objects().len() {
                    instances += 1;
                    if !verify_universal_property(cat, &w, x, y).unwrap() {
                        up_fail.push(format!("{name} {x}->{y}"));
                    }
                }
            }
        }
    }
    vec![
        check("identities-only W reproduces Hom on 20 categories", cats.len() == 20 && id_fail.is_empty(), id_fail.join(" ")),
        check("concrete Ore witness (w, f)", violation.as_ref() == Some(&expected), format!("{violation:?}")),
        check("universal property on <= 12-arrow instances", up_fail.is_empty(), format!("{instances} instances; {}", up_fail.join(" "))),
    ]
}

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

fn criterion_8() -> Vec<Check> {
    let mut reps = 0;
    let mut fixed_fail = Vec::new();
    for (name, g) in oracles::corpus_groups(usize::MAX) {
        let g = Arc::new(g);
        let t = character_table(&g).unwrap();
        for rep in representations(&g) {
            reps += 1;
            let chi = rep.character(&t).unwrap();
            let expected = t.integer_inner_product(&chi, t.character(0)).unwrap() as usize;
            match fixed_subspace(&rep, &t) {
                Ok(f) if f.dimension == expected => {}
                other => fixed_fail.push(format!("{name}: {:?}", other.map(|f| f.dimension))),
            }
        }
    }

    let c2 = Arc::new(oracles::group("c2"));
    let t = character_table(&c2).unwrap();
    let sign = MatrixRep::sign(c2.clone(), &Homomorphism::identity(&c2)).unwrap();
    let r = derived_class_detector(&t, RepInput::Matrices(&sign)).unwrap();
    let certified = r.fixed_dim == 0 && r.degree == -1 && r.verdict == Verdict::NonzeroCertified;

    let mut schur_fail = Vec::new();
    let mut charts = 0;
    for name in ["c3", "c4", "s3", "d8", "q8", "a4", "d12", "s4"] {
        let g = Arc::new(oracles::group(name));
        let real = real_irreps(&g).unwrap();
        let reps = representations(&g);
        let v = &reps[1];
        for e in &reps[2..] {
            charts += 1;
            let a = QMatrix::from_fn(e.dim(), v.dim(), |i, j| BigRational::from_integer(BigInt::from((i * 7 + j * 3) % 5) - 2));
            let chart = LinearChart::averaged(v.clone(), e.clone(), &a).unwrap();
            match isotypic_surjectivity(&chart, &real) {
                Ok(report) if report.exact && report.max_cross_block == 0.0 => {}
                other => schur_fail.push(format!("{name}: {:?}", other.map(|r| r.max_cross_block))),
            }
        }
    }

    // the floating-point path, against the pinned tolerance
    let rot = orbicalc_core::matrep::rotation_rep(5, 1).unwrap();
    let real = real_irreps(rot.group()).unwrap();
    let chart = LinearChart::new(rot.clone(), rot, orbicalc_core::transversality::LinearMap::Approx(orbicalc_core::linalg::Matrix::identity(2)))
        .unwrap();
    let float = isotypic_surjectivity(&chart, &real).unwrap();

    vec![
        check("projector rank = <chi, 1> on every corpus representation", fixed_fail.is_empty(), format!("{reps} reps; {}", fixed_fail.join(" "))),
        check("(c2, sign) certified nonzero in degree -1", certified, format!("{r:?}")),
        check("cross-isotype blocks vanish exactly", schur_fail.is_empty(), format!("{charts} charts; {}", schur_fail.join(" "))),
        check(
            "float chart cross blocks below tolerance",
            float.max_cross_block < FLOAT_TOL && float.surjective,
            format!("max {:e} < {FLOAT_TOL:e}", float.max_cross_block),
        ),
    ]
}

fn suite_bytes(dir: &std::path::Path) -> Vec<(Vec<String>, Vec<u8>, Vec<u8>, Vec<u8>)> {
    common::examples()
        .into_iter()
        .enumerate()
        .map(|(i, ex)| {
            let manifest = dir.join(format!("manifest-{i}.json"));
            let mut args = ex.args.clone();
            args.extend(["--manifest".to_string(), manifest.display().to_string()]);
            let out = common::run(&args);
            let m = std::fs::read(&manifest).unwrap_or_default();
            (ex.args, out.stdout, out.stderr, m)
        })
        .collect()
}

fn criterion_9() -> Vec<Check> {
    let dir = tempfile::tempdir().unwrap();
    let first = suite_bytes(dir.path());
    let second = suite_bytes(dir.path());
    let differing: Vec<String> = first.iter().zip(&second).filter(|(a, b)| a != b).map(|(a, _)| a.0.join(" ")).collect();
    let empty: Vec<String> = first.iter().filter(|r| r.1.is_empty() || r.3.is_empty()).map(|r| r.0.join(" ")).collect();
    vec![
        check("every example produced output and a manifest", empty.is_empty(), empty.join("; ")),
        check("stdout, stderr and manifests identical across two runs", differing.is_empty(), format!("{} invocations; {}", first.len(), differing.join("; "))),
    ]
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Vec<Check>,
}

#[test]
fn acceptance_report() {
    let criteria = [
        Criterion { id: 1, title: "character-table exactness", limit: Some(Duration::from_secs(10)), run: criterion_1 },
        Criterion { id: 2, title: "Frobenius-Schur real classification", limit: None, run: criterion_2 },
        Criterion { id: 3, title: "hom-count oracle", limit: Some(Duration::from_secs(60)), run: criterion_3 },
        Criterion { id: 4, title: "representable hom identities", limit: None, run: criterion_4 },
        Criterion { id: 5, title: "stable-maps internal consistency", limit: Some(Duration::from_secs(300)), run: criterion_5 },
        Criterion { id: 6, title: "nerve contractibility", limit: Some(Duration::from_secs(120)), run: criterion_6 },
        Criterion { id: 7, title: "localization kernel", limit: None, run: criterion_7 },
        Criterion { id: 8, title: "transversality and detector", limit: None, run: criterion_8 },
        Criterion { id: 9, title: "CLI determinism", limit: None, run: criterion_9 },
    ];

    let mut unexpected = Vec::new();
    let mut deviations_seen = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let checks = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                vec![check("ran to completion", false, msg.unwrap_or_default())]
            });
        let elapsed = start.elapsed();
        let in_time = c.limit.map_or(true, |l| elapsed <= l);
        let pass = in_time && checks.iter().all(|k| k.pass);
        let timing = match c.limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!("{} criterion {}: {} ({timing})", if pass { "PASS" } else { "FAIL" }, c.id, c.title);
        for k in &checks {
            let known = KNOWN_DEVIATIONS.contains(&(c.id, k.label.as_str()));
            let mark = match (k.pass, known) {
                (true, _) => "ok",
                (false, true) => "known deviation",
                (false, false) => "FAILED",
            };
            println!("    [{mark}] {}{}", k.label, if k.detail.is_empty() { String::new() } else { format!(": {}", k.detail) });
            match (k.pass, known) {
                (false, false) => unexpected.push(format!("{}: {}", c.id, k.label)),
                (false, true) => deviations_seen.push((c.id, k.label.clone())),
                _ => {}
            }
        }
        if !in_time {
            unexpected.push(format!("{}: over the time limit", c.id));
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    for (id, label) in KNOWN_DEVIATIONS {
        assert!(
            deviations_seen.iter().any(|(i, l)| i == id && l == label),
            "criterion {id} '{label}' now passes; drop it from KNOWN_DEVIATIONS"
        );
    }
}
