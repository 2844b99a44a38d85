//! Homomorphisms as image arrays, generator-image extension, and isomorphism search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A group homomorphism stored as the image of every domain element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Homomorphism {
    images: Vec<Elem>,
}

impl Homomorphism {
    /// Checks the homomorphism property on every pair.
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if !is_homomorphism(domain, codomain, &images) {
            return Err(Error::NotAHomomorphism(format!("image array {images:?}")));
        }
        Ok(Homomorphism { images })
    }

    /// Wraps an image array already known to respect the tables.
    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        Homomorphism { images }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Homomorphism { images: group.elements().collect() }
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        Homomorphism { images: vec![codomain.identity(); domain.order()] }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Elem> {
        self.images
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.images[g]
    }

    pub fn domain_order(&self) -> usize {
        self.images.len()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism { images: self.images.iter().map(|&x| then.images[x]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.images.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_bijective(&self, codomain: &FiniteGroup) -> bool {
        self.images.len() == codomain.order() && self.is_injective()
    }

    pub fn kernel(&self, codomain: &FiniteGroup) -> Vec<Elem> {
        (0..self.images.len()).filter(|&g| self.images[g] == codomain.identity()).collect()
    }

    /// Sorted image subgroup.
    pub fn image(&self) -> Vec<Elem> {
        let mut out = self.images.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `x -> h φ(x) h^-1`.
    pub fn conjugated(&self, codomain: &FiniteGroup, h: Elem) -> Homomorphism {
        Homomorphism { images: self.images.iter().map(|&x| codomain.conjugate(x, h)).collect() }
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        let mut inv = vec![usize::MAX; self.images.len()];
        for (g, &x) in self.images.iter().enumerate() {
            if x >= inv.len() || inv[x] != usize::MAX {
                return None;
            }
            inv[x] = g;
        }
        Some(Homomorphism { images: inv })
    }
}

/// Brute-force check of `φ(ab) = φ(a)φ(b)` over all pairs.
pub fn is_homomorphism(domain: &FiniteGroup, codomain: &FiniteGroup, images: &[Elem]) -> bool {
    images.len() == domain.order()
        && images.iter().all(|&x| x < codomain.order())
        && domain.elements().all(|a| {
            domain.elements().all(|b| images[domain.mul(a, b)] == codomain.mul(images[a], images[b]))
        })
}

/// Extends generator images to the subgroup they generate by walking the
/// Cayley graph. Every edge `x -> x*s` is checked, so a returned map is a
/// homomorphism on `<gens>`; elements outside it are left as `usize::MAX`.
pub fn extend_generator_images(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    debug_assert_eq!(gens.len(), images.len());
    let mut map = vec![usize::MAX; domain.order()];
    map[domain.identity()] = codomain.identity();
    let mut stack = vec![domain.identity()];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = domain.mul(x, s);
            let img = codomain.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                stack.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Depth-first search over images of `gens`, pruning with partial extension.
/// `candidates[j]` lists the allowed images of `gens[j]`. The visitor returns
/// `false` to stop the search.
pub(crate) fn search_generator_images(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    visit: &mut dyn FnMut(Vec<Elem>) -> bool,
) {
    fn go(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        chosen: &mut Vec<Elem>,
        visit: &mut dyn FnMut(Vec<Elem>) -> bool,
    ) -> bool {
        let j = chosen.len();
        for &c in &candidates[j] {
            chosen.push(c);
            if let Some(map) = extend_generator_images(domain, codomain, &gens[..=j], chosen) {
                let keep_going = if j + 1 == gens.len() {
                    visit(map)
                } else {
                    go(domain, codomain, gens, candidates, chosen, visit)
                };
                if !keep_going {
                    chosen.pop();
                    return false;
                }
            }
            chosen.pop();
        }
        true
    }
    if gens.is_empty() {
        visit(vec![codomain.identity(); domain.order()]);
        return;
    }
    go(domain, codomain, gens, candidates, &mut Vec::with_capacity(gens.len()), visit);
}

/// Invariants compared before any isomorphism search: order, multiset of
/// element orders, multiset of (class size, element order).
fn iso_invariants(g: &FiniteGroup) -> (usize, Vec<usize>, Vec<(usize, usize)>) {
    let mut orders = g.element_orders();
    let classes = g.conjugacy_classes();
    let mut class_data: Vec<(usize, usize)> =
        classes.classes.iter().map(|c| (c.len(), orders[c[0]])).collect();
    orders.sort_unstable();
    class_data.sort_unstable();
    (g.order(), orders, class_data)
}

/// An explicit isomorphism `g -> h`, or `None` if the groups are not isomorphic.
/// Identical tables yield the identity map.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Homomorphism> {
    if g.same_table(h) {
        return Some(Homomorphism::identity(g));
    }
    if iso_invariants(g) != iso_invariants(h) {
        return None;
    }
    let gens = g.generating_set();
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let g_classes = g.conjugacy_classes();
    let h_classes = h.conjugacy_classes();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let size = g_classes.classes[g_classes.class_of(s)].len();
            h.elements()
                .filter(|&t| h_orders[t] == g_orders[s] && h_classes.classes[h_classes.class_of(t)].len() == size)
                .collect()
        })
        .collect();
    let mut found = None;
    search_generator_images(g, h, &gens, &candidates, &mut |map| {
        let hom = Homomorphism::from_images_unchecked(map);
        if hom.is_bijective(h) {
            found = Some(hom);
            false
        } else {
            true
        }
    });
    found
}
