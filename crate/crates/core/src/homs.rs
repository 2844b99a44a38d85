//! Homomorphisms `G -> H` up to conjugation in `H`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{violation, Error, Result};
use crate::group::{Elem, FiniteGroup, SubgroupClass};
use crate::morphism::{search_generator_images, Homomorphism};

/// Default cap on the number of homomorphisms enumerated for one pair.
pub const DEFAULT_HOM_CAP: usize = 2_000_000;

/// An `H`-conjugacy class of homomorphisms `G -> H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomClass {
    /// Lexicographically least image array in the class.
    pub representative: Homomorphism,
    /// Images of `G`'s generating set under the representative.
    pub generator_images: Vec<Elem>,
    pub injective: bool,
    pub orbit_size: usize,
    pub centralizer_order: usize,
}

pub fn enumerate_homs(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    enumerate_homs_capped(g, h, DEFAULT_HOM_CAP)
}

/// All homomorphisms, sorted by image array. Generator images are restricted
/// to elements whose order divides the generator's order.
pub fn enumerate_homs_capped(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Vec<Homomorphism>> {
    let gens = g.generating_set();
    let h_orders = h.element_orders();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| o % h_orders[t] == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut overflow = false;
    search_generator_images(g, h, &gens, &candidates, &mut |map| {
        if out.len() == cap {
            overflow = true;
            return false;
        }
        out.push(Homomorphism::from_images_unchecked(map));
        true
    });
    if overflow {
        return Err(Error::CapExceeded { what: "homomorphism count", size: cap + 1, cap });
    }
    out.sort_unstable();
    Ok(out)
}

/// The lexicographically least conjugate `x -> c φ(x) c^-1`.
pub fn canonical_representative(codomain: &FiniteGroup, phi: &Homomorphism) -> Homomorphism {
    codomain.elements().map(|c| phi.conjugated(codomain, c)).min().expect("nonempty group")
}

fn make_class(h: &FiniteGroup, gens: &[Elem], phi: &Homomorphism) -> Result<(HomClass, BTreeSet<Homomorphism>)> {
    let orbit: BTreeSet<Homomorphism> = h.elements().map(|c| phi.conjugated(h, c)).collect();
    let representative = orbit.first().expect("nonempty orbit").clone();
    let centralizer_order = h.centralizer(&representative.image()).order();
    if orbit.len() * centralizer_order != h.order() {
        return Err(violation("orbit-stabilizer fails for a homomorphism class"));
    }
    let injective = representative.kernel(h).len() == 1;
    debug_assert_eq!(injective, representative.is_injective());
    let generator_images = gens.iter().map(|&s| representative.apply(s)).collect();
    Ok((HomClass { representative, generator_images, injective, orbit_size: orbit.len(), centralizer_order }, orbit))
}

/// Conjugacy classes of homomorphisms, sorted by representative.
pub fn hom_classes(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<HomClass>> {
    let homs = enumerate_homs(g, h)?;
    let gens = g.generating_set();
    let mut seen: BTreeSet<Homomorphism> = BTreeSet::new();
    let mut out = Vec::new();
    for phi in &homs {
        if seen.contains(phi) {
            continue;
        }
        let (class, orbit) = make_class(h, &gens, phi)?;
        seen.extend(orbit);
        out.push(class);
    }
    if out.iter().map(|c| c.orbit_size).sum::<usize>() != homs.len() {
        return Err(violation("homomorphism classes do not partition the homomorphisms"));
    }
    out.sort();
    Ok(out)
}

/// The class containing `phi`.
pub fn class_of(g: &FiniteGroup, h: &FiniteGroup, phi: &Homomorphism) -> Result<HomClass> {
    Ok(make_class(h, &g.generating_set(), phi)?.0)
}

/// `π₁` at a class: the centralizer of the image.
pub fn pi1(h: &FiniteGroup, class: &HomClass) -> SubgroupClass {
    h.centralizer(&class.representative.image())
}

/// Outcome of the two counting identities relating all classes to injective
/// classes of quotients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCrossCheck {
    pub total_classes: usize,
    pub injective_classes: usize,
    pub normal_subgroups: usize,
    /// Injective classes = all classes minus those factoring through a proper quotient.
    pub complement_identity: bool,
    /// Σ over normal `N` of injective classes `G/N -> H` = all classes `G -> H`.
    pub partition_identity: bool,
}

/// Injective classes together with a verified cross-check report; a failed
/// identity is returned as an error.
pub fn rep_hom_classes(g: &FiniteGroup, h: &FiniteGroup) -> Result<(Vec<HomClass>, RepCrossCheck)> {
    let all = hom_classes(g, h)?;
    let injective: Vec<HomClass> = all.iter().filter(|c| c.injective).cloned().collect();
    let normals = g.normal_subgroups()?;
    let mut factoring: BTreeSet<Homomorphism> = BTreeSet::new();
    let mut partition_sum = 0;
    for n in &normals {
        let (q, proj) = g.quotient(n)?;
        let q_classes = hom_classes(&q, h)?;
        partition_sum += q_classes.iter().filter(|c| c.injective).count();
        if n.len() > 1 {
            for c in &q_classes {
                let pulled = Homomorphism::from_images_unchecked(proj.iter().map(|&x| c.representative.apply(x)).collect());
                factoring.insert(canonical_representative(h, &pulled));
            }
        }
    }
    let complement: Vec<&HomClass> = all.iter().filter(|c| !factoring.contains(&c.representative)).collect();
    let report = RepCrossCheck {
        total_classes: all.len(),
        injective_classes: injective.len(),
        normal_subgroups: normals.len(),
        complement_identity: complement.len() == injective.len()
            && complement.iter().zip(&injective).all(|(a, b)| a.representative == b.representative),
        partition_identity: partition_sum == all.len(),
    };
    if !report.complement_identity || !report.partition_identity {
        return Err(violation(format!("representable class identities fail: {report:?}")));
    }
    Ok((injective, report))
}

/// Injective classes only, without the quotient cross-check.
pub fn injective_hom_classes(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<HomClass>> {
    Ok(hom_classes(g, h)?.into_iter().filter(|c| c.injective).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_generators;

    fn s3() -> FiniteGroup {
        group_from_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn c2_into_s3() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(enumerate_homs(&c2, &s3()).unwrap().len(), 4);
        let classes = hom_classes(&c2, &s3()).unwrap();
        let mut orbits: Vec<usize> = classes.iter().map(|c| c.orbit_size).collect();
        orbits.sort();
        assert_eq!(orbits, vec![1, 3]);
        let (inj, report) = rep_hom_classes(&c2, &s3()).unwrap();
        assert_eq!(inj.len(), 1);
        assert!(report.complement_identity && report.partition_identity);
        assert_eq!(pi1(&s3(), &inj[0]).order(), 2);
    }

    #[test]
    fn identity_of_s3_has_trivial_centralizer() {
        let g = s3();
        let id = class_of(&g, &g, &Homomorphism::identity(&g)).unwrap();
        assert_eq!(pi1(&g, &id).order(), 1);
        assert_eq!(hom_classes(&g, &FiniteGroup::cyclic(2).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(matches!(enumerate_homs_capped(&c4, &c4, 3), Err(Error::CapExceeded { .. })));
    }
}
