//! The category of small finite groups and conjugacy classes of injections,
//! its nerve truncated by group order and simplex dimension, and integral
//! homology via Smith normal form.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{violation, Error, Result};
use crate::group::FiniteGroup;
use crate::homs::{canonical_representative, rep_hom_classes, HomClass};
use crate::linalg::{smith_invariant_factors, Matrix};
use crate::morphism::{are_isomorphic, Homomorphism};

/// Largest group order for which the corpus lists every isomorphism class.
pub const MAX_CATEGORY_ORDER: usize = 12;

/// Number of isomorphism classes of groups of order `n`, for `1 ≤ n ≤ 12`.
const GROUP_COUNTS: [usize; 12] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5];

/// Default cap on the number of cells in any one dimension.
pub const CELL_CAP: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct CatObject {
    pub name: String,
    pub group: FiniteGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    pub class: HomClass,
}

/// Finite groups up to isomorphism with conjugacy classes of injective
/// homomorphisms as arrows.
#[derive(Debug, Clone)]
pub struct QuotientCategory {
    objects: Vec<CatObject>,
    morphisms: Vec<Morphism>,
    hom_index: Vec<Vec<Vec<usize>>>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

/// Which non-identity arrows may appear in a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum ChainMode {
    /// Injections that are not isomorphisms.
    #[default]
    ProperInjections,
    /// Every non-identity class, including outer automorphisms.
    AllNonIdentity,
}

impl QuotientCategory {
    /// Builds the category on the given groups, which must be pairwise
    /// non-isomorphic and complete for every order up to `max_order`.
    pub fn build(groups: &[(String, FiniteGroup)], max_order: usize) -> Result<Self> {
        if max_order == 0 || max_order > MAX_CATEGORY_ORDER {
            return Err(Error::CapExceeded { what: "category group order", size: max_order, cap: MAX_CATEGORY_ORDER });
        }
        let mut objects: Vec<CatObject> = groups
            .iter()
            .filter(|(_, g)| g.order() <= max_order)
            .map(|(name, g)| CatObject { name: name.clone(), group: g.clone() })
            .collect();
        objects.sort_by_key(|o| o.group.order());
        for (n, &want) in GROUP_COUNTS.iter().enumerate().take(max_order) {
            let have = objects.iter().filter(|o| o.group.order() == n + 1).count();
            if have != want {
                return Err(Error::InvalidInput(format!(
                    "expected {want} groups of order {} but {have} were supplied",
                    n + 1
                )));
            }
        }
        for (i, a) in objects.iter().enumerate() {
            for b in &objects[i + 1..] {
                if are_isomorphic(&a.group, &b.group).is_some() {
                    return Err(Error::InvalidInput(format!("{} and {} are isomorphic", a.name, b.name)));
                }
            }
        }
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut hom_index = vec![vec![Vec::new(); n]; n];
        let mut by_rep: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                let (ga, gb) = (&objects[a].group, &objects[b].group);
                if gb.order() % ga.order() != 0 {
                    continue;
                }
                let (classes, _) = rep_hom_classes(ga, gb)?;
                for class in classes {
                    let id = morphisms.len();
                    by_rep.insert((a, b, class.representative.images().to_vec()), id);
                    hom_index[a][b].push(id);
                    morphisms.push(Morphism { src: a, dst: b, class });
                }
            }
        }
        let identities = (0..n)
            .map(|a| {
                let id = Homomorphism::identity(&objects[a].group);
                by_rep.get(&(a, a, id.into_images())).copied().ok_or_else(|| violation("identity class missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut compose = HashMap::new();
        for f in 0..morphisms.len() {
            let (a, b) = (morphisms[f].src, morphisms[f].dst);
            for &g in &hom_index[b].iter().flatten().copied().collect::<Vec<_>>() {
                let c = morphisms[g].dst;
                let result = compose_checked(&objects, &morphisms[f].class, &morphisms[g].class, b, c)?;
                let id = by_rep
                    .get(&(a, c, result.into_images()))
                    .copied()
                    .ok_or_else(|| violation("composite of injections is not a listed class"))?;
                compose.insert((f, g), id);
            }
        }
        let cat = QuotientCategory { objects, morphisms, hom_index, identities, compose };
        cat.verify_laws()?;
        Ok(cat)
    }

    fn verify_laws(&self) -> Result<()> {
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose[&(self.identities[m.src], f)] != f || self.compose[&(f, self.identities[m.dst])] != f {
                return Err(violation("identity law fails"));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.hom_index[self.morphisms[f].dst].iter().flatten() {
                let fg = self.compose[&(f, g)];
                for &h in self.hom_index[self.morphisms[g].dst].iter().flatten() {
                    if self.compose[&(fg, h)] != self.compose[&(f, self.compose[&(g, h)])] {
                        return Err(violation("associativity fails on classes"));
                    }
                }
            }
        }
        let trivial = 0;
        if self.objects[trivial].group.order() != 1 || (0..self.objects.len()).any(|b| self.hom_index[trivial][b].len() != 1) {
            return Err(violation("trivial group is not initial"));
        }
        Ok(())
    }

    pub fn objects(&self) -> &[CatObject] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn homs(&self, a: usize, b: usize) -> &[usize] {
        &self.hom_index[a][b]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// `g ∘ f` (first `f`, then `g`).
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    fn admissible(&self, f: usize, mode: ChainMode) -> bool {
        let m = &self.morphisms[f];
        match mode {
            ChainMode::ProperInjections => m.src != m.dst,
            ChainMode::AllNonIdentity => !self.is_identity(f),
        }
    }
}

/// Class of `g ∘ f`, checked to be independent of the representative of
/// `f`. Conjugating `g` only conjugates the composite, which the canonical
/// representative absorbs.
fn compose_checked(objects: &[CatObject], f: &HomClass, g: &HomClass, b: usize, c: usize) -> Result<Homomorphism> {
    let (gb, gc) = (&objects[b].group, &objects[c].group);
    let expected = canonical_representative(gc, &f.representative.then(&g.representative));
    for x in gb.elements() {
        let f2 = f.representative.conjugated(gb, x);
        if canonical_representative(gc, &f2.then(&g.representative)) != expected {
            return Err(violation("class composition depends on representatives"));
        }
    }
    Ok(expected)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    /// `G_0, ..., G_p` as object indices.
    pub objects: Vec<usize>,
    /// The `p` arrows as morphism indices.
    pub arrows: Vec<usize>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    /// Object index of the isotropy group `G_0`.
    pub fn isotropy(&self) -> usize {
        self.objects[0]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellCensus {
    pub max_dim: usize,
    pub mode: ChainMode,
    /// `cells[p]`: the `p`-cells in lexicographic order of arrows.
    pub cells: Vec<Vec<Cell>>,
}

impl CellCensus {
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

pub fn cell_census(cat: &QuotientCategory, max_dim: usize, mode: ChainMode) -> Result<CellCensus> {
    let mut cells: Vec<Vec<Cell>> = vec![(0..cat.objects.len()).map(|a| Cell { objects: vec![a], arrows: vec![] }).collect()];
    for p in 1..=max_dim {
        let mut next = Vec::new();
        for cell in &cells[p - 1] {
            let last = *cell.objects.last().expect("nonempty");
            for &f in cat.hom_index[last].iter().flatten() {
                if !cat.admissible(f, mode) {
                    continue;
                }
                let mut c = cell.clone();
                c.objects.push(cat.morphisms[f].dst);
                c.arrows.push(f);
                next.push(c);
                if next.len() > CELL_CAP {
                    return Err(Error::CapExceeded { what: "cells in one dimension", size: next.len(), cap: CELL_CAP });
                }
            }
        }
        next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
        cells.push(next);
    }
    Ok(CellCensus { max_dim, mode, cells })
}

/// Integer chain complex; `boundaries[p - 1]` is `∂_p : C_p -> C_{p-1}` with
/// rows indexed by `(p-1)`-cells.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Matrix<i64>>,
    /// Degrees at or above this are not computed faithfully.
    pub truncation: Option<usize>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<i64>>, truncation: Option<usize>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidInput("need one boundary matrix per positive degree".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.nrows() != ranks[i] || b.ncols() != ranks[i + 1] {
                return Err(Error::InvalidInput(format!("boundary {} has the wrong shape", i + 1)));
            }
        }
        for w in boundaries.windows(2) {
            if !w[0].matmul(&w[1]).is_zero() {
                return Err(violation("boundary of a boundary is nonzero"));
            }
        }
        Ok(ChainComplex { ranks, boundaries, truncation })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }
}

/// Normalized chains of the nerve restricted to the census cells.
pub fn nerve_chain_complex(cat: &QuotientCategory, census: &CellCensus) -> Result<ChainComplex> {
    let index: Vec<HashMap<&[usize], usize>> = census
        .cells
        .iter()
        .map(|cells| cells.iter().enumerate().map(|(i, c)| (c.arrows.as_slice(), i)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for p in 1..census.cells.len() {
        let mut m = Matrix::<i64>::zeros(census.cells[p - 1].len(), census.cells[p].len());
        for (j, cell) in census.cells[p].iter().enumerate() {
            for i in 0..=p {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let row = if p == 1 {
                    // vertices: d_0 keeps the target, d_1 the source
                    Some(cell.objects[1 - i])
                } else {
                    face(cat, &cell.arrows, i).and_then(|arrows| {
                        if arrows.iter().any(|&f| cat.is_identity(f)) {
                            None
                        } else {
                            index[p - 1].get(arrows.as_slice()).copied()
                        }
                    })
                };
                if let Some(r) = row {
                    let v = m.get(r, j) + sign;
                    m.set(r, j, v);
                } else if p > 1 {
                    let arrows = face(cat, &cell.arrows, i).expect("composable");
                    if !arrows.iter().any(|&f| cat.is_identity(f)) {
                        return Err(violation("face of a cell is not a cell"));
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(census.counts(), boundaries, Some(census.max_dim))
}

/// Face `d_i` of a chain of arrows: drop the first or last arrow, or compose
/// the arrows meeting at object `i`.
fn face(cat: &QuotientCategory, arrows: &[usize], i: usize) -> Option<Vec<usize>> {
    let p = arrows.len();
    if i == 0 {
        return Some(arrows[1..].to_vec());
    }
    if i == p {
        return Some(arrows[..p - 1].to_vec());
    }
    let mut out = arrows[..i - 1].to_vec();
    out.push(cat.compose(arrows[i - 1], arrows[i])?);
    out.extend_from_slice(&arrows[i + 1..]);
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub reliable: bool,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

pub fn homology(cc: &ChainComplex) -> Vec<HomologyGroup> {
    let factors: Vec<Vec<BigInt>> = cc
        .boundaries
        .iter()
        .map(|b| smith_invariant_factors(&b.map(|&x| BigInt::from(x))))
        .collect();
    (0..cc.ranks.len())
        .map(|p| {
            let rank_out = if p == 0 { 0 } else { factors[p - 1].len() };
            let (rank_in, torsion) = match factors.get(p) {
                Some(f) => (f.len(), f.iter().filter(|x| **x != BigInt::from(1)).cloned().collect()),
                None => (0, Vec::new()),
            };
            HomologyGroup {
                degree: p,
                betti: cc.ranks[p] - rank_out - rank_in,
                torsion,
                reliable: cc.truncation.is_none_or(|k| p < k),
            }
        })
        .collect()
}

/// Simplicial chain complex of the complex generated by the given facets
/// (vertex lists); all faces are included and oriented by sorted vertices.
pub fn simplicial_chain_complex(facets: &[Vec<usize>]) -> Result<ChainComplex> {
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    for facet in facets {
        let mut f = facet.clone();
        f.sort_unstable();
        f.dedup();
        if f.is_empty() {
            return Err(Error::InvalidInput("empty facet".into()));
        }
        for mask in 1u64..(1 << f.len()) {
            let s: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            let d = s.len() - 1;
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(s);
        }
    }
    for level in &mut simplices {
        level.sort();
        level.dedup();
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut boundaries = Vec::new();
    for d in 1..simplices.len() {
        let mut m = Matrix::<i64>::zeros(simplices[d - 1].len(), simplices[d].len());
        for (j, s) in simplices[d].iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                m.set(index[d - 1][&f], j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(simplices.iter().map(Vec::len).collect(), boundaries, None)
}
