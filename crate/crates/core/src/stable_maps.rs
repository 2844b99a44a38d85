//! Stable (representable) maps `BG -> BH` as a free abelian group.
//!
//! A generator is a framed point `BK` with an injective map to `BG` and a
//! map to `BH` (injective in the representable variant), up to
//! re-identification of `K`. After fixing a subgroup representative
//! `K ≤ G`, re-identification reduces to the action of `N_G(K)` by
//! conjugation on `(Hom(K,H)/H) × Framings(K)`. The structure involution
//! gives the relation `q + ι(q) = 0`; no other relations are imposed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bundles::{framing_bit_permutation, involution_mask, permute_mask, Framing};
use crate::error::{violation, Error, Result};
use crate::group::{Elem, FiniteGroup, SubgroupClass};
use crate::homs::{canonical_representative, hom_classes, HomClass};
use crate::linalg::{smith_invariant_factors, Matrix};
use crate::morphism::{are_isomorphic, Homomorphism};
use crate::real::{real_irreps, RealIrrepTable};

/// Cap on `#(g-classes) × #framings` for a single subgroup.
pub const PAIR_CAP: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// Both legs injective.
    Rep,
    /// Only the leg to `G` injective.
    Orb,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Rep => "rep",
            Variant::Orb => "orb",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rep" => Ok(Variant::Rep),
            "orb" => Ok(Variant::Orb),
            other => Err(Error::InvalidInput(format!("unknown variant {other:?}"))),
        }
    }
}

/// One generator class: `K` (as a subgroup class of `G`), a class of maps
/// `K -> H` and a framing of `K`, up to the normalizer action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapGenerator {
    /// Index of `K` in `G.subgroup_classes()`.
    pub subgroup_index: usize,
    pub subgroup: SubgroupClass,
    /// Class of `K -> H`, with `K` ordered as in `G.subgroup(representative)`.
    pub g_class: HomClass,
    pub framing: Framing,
    /// Number of (g-class, framing) pairs in this normalizer orbit.
    pub orbit_size: usize,
}

impl MapGenerator {
    fn key(&self) -> (usize, &[Elem], u64) {
        (self.subgroup_index, self.g_class.representative.images(), self.framing.mask())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapGroupPresentation {
    pub variant: Variant,
    /// All generator classes.
    pub classes: Vec<MapGenerator>,
    /// `partner[i]`: index of the class of `ι(q_i)`.
    pub partner: Vec<usize>,
    /// Pairs `(i, j)` with `i < j` and `q_i + q_j = 0`; one per ι-orbit.
    pub orbit_table: Vec<(usize, usize)>,
    /// Indices of the basis classes (the smaller member of each pair).
    pub basis: Vec<usize>,
    pub rank: usize,
}

impl MapGroupPresentation {
    pub fn basis_generators(&self) -> impl Iterator<Item = &MapGenerator> {
        self.basis.iter().map(|&i| &self.classes[i])
    }

    /// Relation rows over the generator classes, as sparse `(column, coefficient)` lists.
    pub fn relations(&self) -> Vec<Vec<(usize, i64)>> {
        self.orbit_table.iter().map(|&(i, j)| vec![(i, 1), (j, 1)]).collect()
    }
}

/// Data for one subgroup class `K ≤ G`.
struct SubgroupData {
    group: FiniteGroup,
    table: RealIrrepTable,
    /// Conjugation automorphisms of `K` by normalizer elements, as image arrays on `K`.
    automorphisms: Vec<Homomorphism>,
}

fn subgroup_data(g: &FiniteGroup, class: &SubgroupClass) -> Result<SubgroupData> {
    let (k, emb) = g.subgroup(&class.representative)?;
    let mut index = vec![usize::MAX; g.order()];
    for (i, &x) in emb.iter().enumerate() {
        index[x] = i;
    }
    let mut automorphisms: Vec<Homomorphism> = g
        .normalizer(&class.representative)
        .into_iter()
        .map(|n| Homomorphism::from_images_unchecked(emb.iter().map(|&x| index[g.conjugate(x, n)]).collect()))
        .collect();
    automorphisms.sort();
    automorphisms.dedup();
    let table = real_irreps(&k)?;
    Ok(SubgroupData { group: k, table, automorphisms })
}

fn admissible_classes(k: &FiniteGroup, h: &FiniteGroup, variant: Variant) -> Result<Vec<HomClass>> {
    let all = hom_classes(k, h)?;
    Ok(match variant {
        Variant::Rep => all.into_iter().filter(|c| c.injective).collect(),
        Variant::Orb => all,
    })
}

/// Generator classes, ordered by (subgroup class, g-class representative, framing mask).
pub fn enumerate_generators(g: &FiniteGroup, h: &FiniteGroup, variant: Variant) -> Result<Vec<MapGenerator>> {
    let mut out = Vec::new();
    for (subgroup_index, class) in g.subgroup_classes()?.into_iter().enumerate() {
        let data = subgroup_data(g, &class)?;
        let classes = admissible_classes(&data.group, h, variant)?;
        if classes.is_empty() {
            continue;
        }
        let lookup: HashMap<&Homomorphism, usize> =
            classes.iter().enumerate().map(|(i, c)| (&c.representative, i)).collect();
        let width = data.table.real_type_ids().len();
        let masks = 1usize << width;
        let pairs = classes.len().checked_mul(masks).filter(|&p| p <= PAIR_CAP).ok_or(Error::CapExceeded {
            what: "generator pairs for one subgroup",
            size: classes.len().saturating_mul(masks),
            cap: PAIR_CAP,
        })?;
        // each automorphism α acts by (c, m) -> (c ∘ α^-1, α_* m)
        let actions: Vec<(Vec<usize>, Vec<usize>)> = data
            .automorphisms
            .iter()
            .map(|alpha| {
                let inv = alpha.inverse().ok_or_else(|| violation("conjugation is not bijective"))?;
                let class_map = classes
                    .iter()
                    .map(|c| {
                        let moved = canonical_representative(h, &inv.then(&c.representative));
                        lookup.get(&moved).copied().ok_or_else(|| violation("normalizer moved a class out of the list"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let perm = framing_bit_permutation(alpha, &data.table, &data.table)?;
                if perm.first() != Some(&0) {
                    return Err(violation("automorphism moved the trivial representation"));
                }
                Ok((class_map, perm))
            })
            .collect::<Result<_>>()?;
        let mut seen = vec![false; pairs];
        for start in 0..pairs {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let (c, m) = (orbit[i] / masks, (orbit[i] % masks) as u64);
                for (class_map, perm) in &actions {
                    let next = class_map[c] * masks + permute_mask(m, perm) as usize;
                    if !seen[next] {
                        seen[next] = true;
                        orbit.push(next);
                    }
                }
                i += 1;
            }
            // `start` is the least pair of its orbit, which is the lex-least (class, mask)
            let (c, m) = (start / masks, (start % masks) as u64);
            out.push(MapGenerator {
                subgroup_index,
                subgroup: class.clone(),
                g_class: classes[c].clone(),
                framing: Framing::from_mask(m, width),
                orbit_size: orbit.len(),
            });
        }
    }
    Ok(out)
}

/// Free abelian presentation modulo `q + ι(q) = 0`.
pub fn map_group(g: &FiniteGroup, h: &FiniteGroup, variant: Variant) -> Result<MapGroupPresentation> {
    let classes = enumerate_generators(g, h, variant)?;
    presentation(g, h, variant, classes)
}

fn presentation(g: &FiniteGroup, h: &FiniteGroup, variant: Variant, classes: Vec<MapGenerator>) -> Result<MapGroupPresentation> {
    let index: HashMap<(usize, Vec<Elem>, u64), usize> = classes
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let (a, b, c) = q.key();
            ((a, b.to_vec(), c), i)
        })
        .collect();
    let mut actions: HashMap<usize, Vec<(Homomorphism, Vec<usize>)>> = HashMap::new();
    let mut partner = Vec::with_capacity(classes.len());
    for q in &classes {
        if !actions.contains_key(&q.subgroup_index) {
            let data = subgroup_data(g, &q.subgroup)?;
            let list = data
                .automorphisms
                .iter()
                .map(|alpha| {
                    let inv = alpha.inverse().ok_or_else(|| violation("conjugation is not bijective"))?;
                    Ok((inv, framing_bit_permutation(alpha, &data.table, &data.table)?))
                })
                .collect::<Result<Vec<_>>>()?;
            actions.insert(q.subgroup_index, list);
        }
        // ι commutes with the normalizer action, so the flipped pair is
        // canonical only up to that action; locate its class by search.
        let flipped = involution_mask(q.framing.mask());
        let target = locate(h, &index, &actions[&q.subgroup_index], q, flipped)?;
        if target == partner.len() {
            return Err(violation("structure involution fixes a generator class"));
        }
        partner.push(target);
    }
    let mut orbit_table = Vec::new();
    for (i, &j) in partner.iter().enumerate() {
        if partner[j] != i {
            return Err(violation("structure involution is not an involution on classes"));
        }
        if i < j {
            orbit_table.push((i, j));
        }
    }
    let basis: Vec<usize> = orbit_table.iter().map(|&(i, _)| i).collect();
    let mut out = MapGroupPresentation { variant, classes, partner, orbit_table, basis, rank: 0 };
    out.rank = free_rank(&out)?;
    if out.rank * 2 != out.classes.len() {
        return Err(violation("rank differs from half the number of generator classes"));
    }
    Ok(out)
}

/// Rank of `Z^classes / relations`, checked to be torsion-free. The
/// relation matrix is split into blocks of rows sharing columns and each
/// block goes through Smith normal form separately.
fn free_rank(p: &MapGroupPresentation) -> Result<usize> {
    let rel = p.relations();
    let n = p.classes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in &rel {
        for w in row.windows(2) {
            let (a, b) = (root(&mut parent, w[0].0), root(&mut parent, w[1].0));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: HashMap<usize, (Vec<usize>, Vec<&Vec<(usize, i64)>>)> = HashMap::new();
    for c in 0..n {
        let r = root(&mut parent, c);
        blocks.entry(r).or_default().0.push(c);
    }
    for row in &rel {
        let r = root(&mut parent, row[0].0);
        blocks.get_mut(&r).expect("block").1.push(row);
    }
    let mut relation_rank = 0;
    for (cols, rows) in blocks.values() {
        if rows.is_empty() {
            continue;
        }
        let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = Matrix::<BigInt>::zeros(rows.len(), cols.len());
        for (i, row) in rows.iter().enumerate() {
            for &(c, v) in row.iter() {
                let j = pos[&c];
                let cur = m.get(i, j).clone();
                m.set(i, j, cur + BigInt::from(v));
            }
        }
        let factors = smith_invariant_factors(&m);
        if factors.iter().any(|f| *f != BigInt::from(1)) {
            return Err(violation("map group has torsion"));
        }
        relation_rank += factors.len();
    }
    Ok(n - relation_rank)
}

/// Index of the class containing `(q.g_class, mask)` over the same subgroup.
fn locate(
    h: &FiniteGroup,
    index: &HashMap<(usize, Vec<Elem>, u64), usize>,
    actions: &[(Homomorphism, Vec<usize>)],
    q: &MapGenerator,
    mask: u64,
) -> Result<usize> {
    let key = (q.subgroup_index, q.g_class.representative.images().to_vec(), mask);
    if let Some(&i) = index.get(&key) {
        return Ok(i);
    }
    for (inv, perm) in actions {
        let moved = canonical_representative(h, &inv.then(&q.g_class.representative));
        let key = (q.subgroup_index, moved.into_images(), permute_mask(mask, perm));
        if let Some(&i) = index.get(&key) {
            return Ok(i);
        }
    }
    Err(violation("involution image of a generator class not found"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub primary: usize,
    pub alternative: usize,
    pub matches: bool,
}

/// Recounts generator classes by a second parameterization: abstract `K` up
/// to isomorphism, injective `K -> G` up to `G`, `K -> H` up to `H`, and a
/// framing, modulo `Aut(K)`, counted by Burnside's lemma. A mismatch is an
/// error.
pub fn cross_check_abstract_enumeration(g: &FiniteGroup, h: &FiniteGroup, variant: Variant) -> Result<CrossCheckReport> {
    let primary = enumerate_generators(g, h, variant)?.len();
    let alternative = abstract_count(g, h, variant)?;
    let report = CrossCheckReport { primary, alternative, matches: primary == alternative };
    if !report.matches {
        return Err(violation(format!("generator counts disagree: {primary} vs {alternative}")));
    }
    Ok(report)
}

fn abstract_count(g: &FiniteGroup, h: &FiniteGroup, variant: Variant) -> Result<usize> {
    let mut types: Vec<FiniteGroup> = Vec::new();
    for class in g.subgroup_classes()? {
        let (k, _) = g.subgroup(&class.representative)?;
        if !types.iter().any(|t| are_isomorphic(t, &k).is_some()) {
            types.push(k);
        }
    }
    let mut total = 0;
    for k in &types {
        let f_classes: Vec<HomClass> = hom_classes(k, g)?.into_iter().filter(|c| c.injective).collect();
        let g_classes = admissible_classes(k, h, variant)?;
        let table = real_irreps(k)?;
        let auts: Vec<Homomorphism> =
            crate::homs::enumerate_homs(k, k)?.into_iter().filter(|a| a.is_bijective(k)).collect();
        let mut fixed_sum = 0usize;
        for alpha in &auts {
            let inv = alpha.inverse().ok_or_else(|| violation("automorphism not invertible"))?;
            let fixed = |target: &FiniteGroup, list: &[HomClass]| {
                list.iter()
                    .filter(|c| canonical_representative(target, &inv.then(&c.representative)) == c.representative)
                    .count()
            };
            let perm = framing_bit_permutation(alpha, &table, &table)?;
            let fixed_masks = 1usize << cycle_count(&perm);
            fixed_sum += fixed(g, &f_classes) * fixed(h, &g_classes) * fixed_masks;
        }
        if fixed_sum % auts.len() != 0 {
            return Err(violation("Burnside count is not an integer"));
        }
        total += fixed_sum / auts.len();
    }
    Ok(total)
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for i in 0..perm.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    cycles
}

/// `(rank(G, H, Rep), rank(H, G, Rep))`; the generators are symmetric in
/// the two legs, so the ranks agree.
pub fn symmetry_witness(g: &FiniteGroup, h: &FiniteGroup) -> Result<(usize, usize)> {
    Ok((map_group(g, h, Variant::Rep)?.rank, map_group(h, g, Variant::Rep)?.rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn point_to_point() {
        let p = map_group(&c(1), &c(1), Variant::Rep).unwrap();
        assert_eq!(p.classes.len(), 2);
        assert_eq!(p.rank, 1);
    }

    #[test]
    fn c2_to_c2() {
        assert_eq!(map_group(&c(2), &c(2), Variant::Rep).unwrap().rank, 3);
        assert_eq!(map_group(&c(2), &c(2), Variant::Orb).unwrap().rank, 5);
    }

    #[test]
    fn c2_to_point() {
        assert_eq!(enumerate_generators(&c(2), &c(1), Variant::Orb).unwrap().len(), 6);
        assert_eq!(enumerate_generators(&c(2), &c(1), Variant::Rep).unwrap().len(), 2);
        assert_eq!(symmetry_witness(&c(2), &c(1)).unwrap(), (1, 1));
    }

    #[test]
    fn cross_check_small() {
        for n in 1..=4 {
            for v in [Variant::Rep, Variant::Orb] {
                assert!(cross_check_abstract_enumeration(&c(n), &c(2), v).unwrap().matches);
            }
        }
    }
}
