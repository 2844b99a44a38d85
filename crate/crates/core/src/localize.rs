//! Finite categories and localization at a right multiplicative system.
//!
//! For `W` satisfying the right Ore and right cancellability conditions, a
//! morphism `X -> Y` of `C[W^-1]` is a span `X <-w- Z -h-> Y` with `w ∈ W`,
//! where `(w, h)` and `(w∘u, h∘u)` are identified whenever `w∘u ∈ W`. The
//! hom-set is computed as that quotient with a union-find.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category with explicit composition table. Identity arrows are
/// added automatically as `id_<object>`.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `comp[a * n + b]` = `b ∘ a` (first `a`, then `b`) when composable.
    comp: Vec<usize>,
    homs: Vec<Vec<Vec<usize>>>,
}

/// JSON form of a category together with an arrow class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(rename = "W", default)]
    pub w: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

impl CategoryFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("category file: {e}")))
    }

    pub fn build(&self) -> Result<(FiniteCategory, ArrowClass)> {
        let obj = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {name:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok((a.name.clone(), obj(&a.src)?, obj(&a.dst)?)))
            .collect::<Result<Vec<_>>>()?;
        let compose: Vec<(&str, &str, &str)> =
            self.compose.iter().map(|[a, b, c]| (a.as_str(), b.as_str(), c.as_str())).collect();
        let cat = FiniteCategory::new(self.objects.clone(), &arrows, &compose)?;
        let w = ArrowClass::from_names(&cat, &self.w)?;
        Ok((cat, w))
    }
}

impl FiniteCategory {
    /// `arrows` lists the non-identity arrows as `(name, src, dst)`;
    /// `compose` lists triples `(a, b, c)` meaning `b ∘ a = c`. Composites
    /// with identities are implied. The table must be complete, associative
    /// and unital.
    pub fn new(objects: Vec<String>, arrows: &[(String, usize, usize)], compose: &[(&str, &str, &str)]) -> Result<Self> {
        let mut all: Vec<Arrow> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow { name: format!("id_{o}"), src: i, dst: i })
            .collect();
        for (name, src, dst) in arrows {
            if *src >= objects.len() || *dst >= objects.len() {
                return Err(Error::InvalidCategory(format!("arrow {name} has an unknown endpoint")));
            }
            all.push(Arrow { name: name.clone(), src: *src, dst: *dst });
        }
        let mut by_name = HashMap::new();
        for (i, a) in all.iter().enumerate() {
            if by_name.insert(a.name.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate arrow name {}", a.name)));
            }
        }
        let n = all.len();
        let identities: Vec<usize> = (0..objects.len()).collect();
        let mut comp = vec![NONE; n * n];
        let set = |comp: &mut Vec<usize>, a: usize, b: usize, c: usize| -> Result<()> {
            let slot = &mut comp[a * n + b];
            if *slot != NONE && *slot != c {
                return Err(Error::InvalidCategory(format!("conflicting composites for ({}, {})", all[a].name, all[b].name)));
            }
            *slot = c;
            Ok(())
        };
        for a in 0..n {
            set(&mut comp, identities[all[a].src], a, a)?;
            set(&mut comp, a, identities[all[a].dst], a)?;
        }
        for (a, b, c) in compose {
            let get = |s: &str| by_name.get(s).copied().ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {s:?}")));
            let (a, b, c) = (get(a)?, get(b)?, get(c)?);
            if all[a].dst != all[b].src || all[c].src != all[a].src || all[c].dst != all[b].dst {
                return Err(Error::InvalidCategory(format!(
                    "composite {} of {} then {} has the wrong type",
                    all[c].name, all[a].name, all[b].name
                )));
            }
            set(&mut comp, a, b, c)?;
        }
        let mut homs = vec![vec![Vec::new(); objects.len()]; objects.len()];
        for (i, a) in all.iter().enumerate() {
            homs[a.src][a.dst].push(i);
        }
        let cat = FiniteCategory { objects, arrows: all, identities, comp, homs };
        cat.verify()?;
        Ok(cat)
    }

    fn verify(&self) -> Result<()> {
        let n = self.arrows.len();
        for a in 0..n {
            for b in 0..n {
                if self.arrows[a].dst == self.arrows[b].src && self.comp[a * n + b] == NONE {
                    return Err(Error::InvalidCategory(format!(
                        "missing composite of {} then {}",
                        self.arrows[a].name, self.arrows[b].name
                    )));
                }
            }
        }
        for a in 0..n {
            for b in self.out_arrows(a) {
                let ab = self.comp[a * n + b];
                for c in self.out_arrows(b) {
                    if self.comp[ab * n + c] != self.comp[a * n + self.comp[b * n + c]] {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails for {}, {}, {}",
                            self.arrows[a].name, self.arrows[b].name, self.arrows[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn out_arrows(&self, a: usize) -> Vec<usize> {
        self.homs[self.arrows[a].dst].iter().flatten().copied().collect()
    }

    /// One-object category of a group (arrows named by element index).
    pub fn from_group(group: &FiniteGroup) -> Result<Self> {
        let arrows: Vec<(String, usize, usize)> = (1..group.order()).map(|g| (format!("g{g}"), 0, 0)).collect();
        let name = |g: usize| if g == 0 { "id_*".to_string() } else { format!("g{g}") };
        let triples: Vec<(String, String, String)> = group
            .elements()
            .flat_map(|a| group.elements().map(move |b| (a, b)))
            .map(|(a, b)| (name(a), name(b), name(group.mul(b, a))))
            .collect();
        let refs: Vec<(&str, &str, &str)> = triples.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        FiniteCategory::new(vec!["*".into()], &arrows, &refs)
    }

    /// Poset on `0..n` with `i ≤ j` iff `le(i, j)`; one arrow per relation.
    pub fn from_poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && le(i, j))
            .map(|(i, j)| (format!("{i}<{j}"), i, j))
            .collect();
        let name = |i: usize, j: usize| if i == j { format!("id_{i}") } else { format!("{i}<{j}") };
        let mut triples = Vec::new();
        for (_, i, j) in &arrows {
            for (_, j2, k) in &arrows {
                if j == j2 {
                    triples.push((name(*i, *j), name(*j, *k), name(*i, *k)));
                }
            }
        }
        let refs: Vec<(&str, &str, &str)> = triples.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        FiniteCategory::new(objects, &arrows, &refs)
    }

    /// One-object category of a monoid given by its table over `0..n`, with
    /// `0` the unit and `table[a][b]` = `a` then `b`.
    pub fn from_monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let arrows: Vec<(String, usize, usize)> = (1..n).map(|m| (format!("m{m}"), 0, 0)).collect();
        let name = |m: usize| if m == 0 { "id_*".to_string() } else { format!("m{m}") };
        let mut triples = Vec::new();
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::InvalidCategory("monoid table entry out of range".into()));
                }
                triples.push((name(a), name(b), name(c)));
            }
        }
        let refs: Vec<(&str, &str, &str)> = triples.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        FiniteCategory::new(vec!["*".into()], &arrows, &refs)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        a < self.objects.len()
    }

    pub fn homs(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x][y]
    }

    /// `b ∘ a`, if composable.
    pub fn then(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.comp[a * self.arrows.len() + b];
        (c != NONE).then_some(c)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// An inverse of `a`, if `a` is an isomorphism.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let Arrow { src, dst, .. } = self.arrows[a];
        self.homs[dst][src]
            .iter()
            .copied()
            .find(|&b| self.then(a, b) == Some(self.identities[src]) && self.then(b, a) == Some(self.identities[dst]))
    }
}

/// A set of arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowClass {
    members: Vec<bool>,
}

impl ArrowClass {
    pub fn identities(cat: &FiniteCategory) -> Self {
        ArrowClass { members: (0..cat.arrow_count()).map(|a| cat.is_identity(a)).collect() }
    }

    pub fn from_indices(cat: &FiniteCategory, arrows: &[usize]) -> Self {
        let mut members = vec![false; cat.arrow_count()];
        for &a in arrows {
            members[a] = true;
        }
        ArrowClass { members }
    }

    pub fn from_names(cat: &FiniteCategory, names: &[String]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| cat.arrow_by_name(n).ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {n:?} in W"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ArrowClass::from_indices(cat, &idx))
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }
}

/// A diagram violating one of the axioms, by arrow index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RmsViolation {
    MissingIdentity { object: usize },
    NotClosed { first: usize, second: usize, composite: usize },
    /// No completion of the cospan `f: C -> D <- B: w` with `w ∈ W`.
    Ore { w: usize, f: usize },
    /// `w ∘ f = w ∘ g` but no `w' ∈ W` with `f ∘ w' = g ∘ w'`.
    Cancellability { w: usize, f: usize, g: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmsVerdict {
    pub valid: bool,
    pub violation: Option<RmsViolation>,
}

/// Exhaustive check of the three axioms; the first violation found is
/// returned as a witness.
pub fn check_right_multiplicative(cat: &FiniteCategory, w: &ArrowClass) -> RmsVerdict {
    let fail = |v| RmsVerdict { valid: false, violation: Some(v) };
    for object in 0..cat.objects.len() {
        if !w.contains(cat.identity(object)) {
            return fail(RmsViolation::MissingIdentity { object });
        }
    }
    for a in w.members() {
        for b in w.members() {
            if let Some(c) = cat.then(a, b) {
                if !w.contains(c) {
                    return fail(RmsViolation::NotClosed { first: a, second: b, composite: c });
                }
            }
        }
    }
    let n = cat.arrow_count();
    for wi in w.members() {
        let (b, d) = (cat.arrows[wi].src, cat.arrows[wi].dst);
        for c in 0..cat.objects.len() {
            for &f in cat.homs(c, d) {
                // need w' : A -> C in W and f' : A -> B with w ∘ f' = f ∘ w'
                let ok = w.members().filter(|&w2| cat.arrows[w2].dst == c).any(|w2| {
                    let a = cat.arrows[w2].src;
                    let target = cat.then(w2, f);
                    cat.homs(a, b).iter().any(|&f2| cat.then(f2, wi) == target)
                });
                if !ok {
                    return fail(RmsViolation::Ore { w: wi, f });
                }
            }
        }
        for c in 0..cat.objects.len() {
            let parallel = cat.homs(c, b);
            for &f in parallel {
                for &g in parallel {
                    if f == g || cat.then(f, wi) != cat.then(g, wi) {
                        continue;
                    }
                    let ok = w
                        .members()
                        .filter(|&w2| cat.arrows[w2].dst == c)
                        .any(|w2| cat.then(w2, f) == cat.then(w2, g));
                    if !ok {
                        return fail(RmsViolation::Cancellability { w: wi, f, g });
                    }
                }
            }
        }
    }
    let _ = n;
    RmsVerdict { valid: true, violation: None }
}

/// A morphism `X -> Y` of the localization: spans `(w, h)` with `w: Z -> X`
/// in `W` and `h: Z -> Y`, all identified with each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanClass {
    /// Least member.
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Hom-set of `C[W^-1]` from `x` to `y`, as classes of spans ordered by
/// representative. Refuses when `W` is not a right multiplicative system.
pub fn localize_hom(cat: &FiniteCategory, w: &ArrowClass, x: usize, y: usize) -> Result<Vec<SpanClass>> {
    let verdict = check_right_multiplicative(cat, w);
    if !verdict.valid {
        return Err(Error::NotRightMultiplicative(format!("{:?}", verdict.violation)));
    }
    Ok(localize_hom_unchecked(cat, w, x, y))
}

fn localize_hom_unchecked(cat: &FiniteCategory, w: &ArrowClass, x: usize, y: usize) -> Vec<SpanClass> {
    let spans: Vec<(usize, usize)> = w
        .members()
        .filter(|&wi| cat.arrows[wi].dst == x)
        .flat_map(|wi| cat.homs(cat.arrows[wi].src, y).iter().map(move |&h| (wi, h)))
        .collect();
    let index: HashMap<(usize, usize), usize> = spans.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..spans.len()).collect();
    for (i, &(wi, h)) in spans.iter().enumerate() {
        let z = cat.arrows[wi].src;
        for zp in 0..cat.objects.len() {
            for &u in cat.homs(zp, z) {
                let wu = cat.then(u, wi).expect("composable");
                if !w.contains(wu) {
                    continue;
                }
                let hu = cat.then(u, h).expect("composable");
                let j = index[&(wu, hu)];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..spans.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(spans[i]);
    }
    let mut out: Vec<SpanClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            SpanClass { representative: members[0], members }
        })
        .collect();
    out.sort_by_key(|c| c.representative);
    out
}

/// Checks that `{Z -w-> X}` (arrows of `W` into `x`, morphisms over `x`) is
/// cofiltered: nonempty, any two objects are dominated by a third, and any
/// parallel pair is equalized.
pub fn check_filtered(cat: &FiniteCategory, w: &ArrowClass, x: usize) -> bool {
    let objs: Vec<usize> = w.members().filter(|&wi| cat.arrows[wi].dst == x).collect();
    if objs.is_empty() {
        return false;
    }
    // morphisms over x from (w1) to (w2): u with w2 ∘ u = w1
    let over = |w1: usize, w2: usize| -> Vec<usize> {
        cat.homs(cat.arrows[w1].src, cat.arrows[w2].src).iter().copied().filter(|&u| cat.then(u, w2) == Some(w1)).collect()
    };
    for &w1 in &objs {
        for &w2 in &objs {
            if !objs.iter().any(|&w3| !over(w3, w1).is_empty() && !over(w3, w2).is_empty()) {
                return false;
            }
            let maps = over(w1, w2);
            for &u in &maps {
                for &v in &maps {
                    if u != v && !objs.iter().any(|&w3| over(w3, w1).iter().any(|&t| cat.then(t, u) == cat.then(t, v))) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Composite of classes `[w1, h1]: X -> Y` and `[w2, h2]: Y -> Z`, through
/// an Ore completion of `h1` against `w2`.
pub fn compose_spans(cat: &FiniteCategory, w: &ArrowClass, first: (usize, usize), second: (usize, usize)) -> Option<(usize, usize)> {
    let (w1, h1) = first;
    let (w2, h2) = second;
    let z1 = cat.arrows[w1].src;
    let z2 = cat.arrows[w2].src;
    for wp in w.members().filter(|&a| cat.arrows[a].dst == z1) {
        let a = cat.arrows[wp].src;
        let target = cat.then(wp, h1)?;
        if let Some(&hp) = cat.homs(a, z2).iter().find(|&&hp| cat.then(hp, w2) == Some(target)) {
            return Some((cat.then(wp, w1)?, cat.then(hp, h2)?));
        }
    }
    None
}

/// Small categories used as targets when probing the universal property.
pub fn probe_categories() -> Vec<FiniteCategory> {
    let c2 = FiniteGroup::cyclic(2).expect("c2");
    let c3 = FiniteGroup::cyclic(3).expect("c3");
    let iso = FiniteCategory::new(
        vec!["0".into(), "1".into()],
        &[("i".into(), 0, 1), ("j".into(), 1, 0)],
        &[("i", "j", "id_0"), ("j", "i", "id_1")],
    )
    .expect("iso groupoid");
    let parallel = FiniteCategory::new(vec!["0".into(), "1".into()], &[("p".into(), 0, 1), ("q".into(), 0, 1)], &[])
        .expect("parallel pair");
    vec![
        FiniteCategory::from_poset(1, |_, _| true).expect("point"),
        FiniteCategory::from_group(&c2).expect("c2"),
        FiniteCategory::from_group(&c3).expect("c3"),
        FiniteCategory::from_poset(2, |i, j| i <= j).expect("arrow"),
        iso,
        FiniteCategory::from_monoid(&[vec![0, 1], vec![1, 1]]).expect("idempotent"),
        FiniteCategory::from_poset(2, |i, j| i == j).expect("discrete"),
        parallel,
    ]
}

/// Cap on functors enumerated into a single probe category.
const FUNCTOR_CAP: usize = 200_000;

/// Enumerates functors `C -> D` sending `W` to isomorphisms, as arrow maps.
fn w_inverting_functors(cat: &FiniteCategory, w: &ArrowClass, probe: &FiniteCategory) -> Vec<Vec<usize>> {
    let n = cat.arrow_count();
    let no = cat.objects.len();
    // composition constraints become checkable once their largest arrow is assigned
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = cat.then(a, b) {
                checks[a.max(b).max(c)].push((a, b, c));
            }
        }
    }
    let mut out = Vec::new();
    let mut obj_map = vec![0usize; no];
    loop {
        let mut arrow_map = vec![NONE; n];
        for o in 0..no {
            arrow_map[cat.identity(o)] = probe.identity(obj_map[o]);
        }
        assign(cat, w, probe, &obj_map, &checks, no, &mut arrow_map, &mut out);
        if out.len() >= FUNCTOR_CAP {
            break;
        }
        // next object map in lexicographic order
        let mut i = 0;
        while i < no {
            obj_map[i] += 1;
            if obj_map[i] < probe.objects.len() {
                break;
            }
            obj_map[i] = 0;
            i += 1;
        }
        if i == no {
            break;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn assign(
    cat: &FiniteCategory,
    w: &ArrowClass,
    probe: &FiniteCategory,
    obj_map: &[usize],
    checks: &[Vec<(usize, usize, usize)>],
    next: usize,
    arrow_map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= FUNCTOR_CAP {
        return;
    }
    let consistent = |arrow_map: &[usize], k: usize| {
        checks[k].iter().all(|&(a, b, c)| probe.then(arrow_map[a], arrow_map[b]) == Some(arrow_map[c]))
    };
    if next == cat.arrow_count() {
        out.push(arrow_map.clone());
        return;
    }
    let arrow = &cat.arrows[next];
    for &candidate in probe.homs(obj_map[arrow.src], obj_map[arrow.dst]) {
        if w.contains(next) && probe.inverse(candidate).is_none() {
            continue;
        }
        arrow_map[next] = candidate;
        if consistent(arrow_map, next) {
            assign(cat, w, probe, obj_map, checks, next + 1, arrow_map, out);
        }
    }
    arrow_map[next] = NONE;
}

/// Every `W`-inverting functor into each probe category is constant on the
/// computed classes `X -> Y` (so it factors, uniquely, through them) and
/// respects span composition through every object. Refuses when `W` is not
/// a right multiplicative system.
pub fn verify_universal_property(cat: &FiniteCategory, w: &ArrowClass, x: usize, y: usize) -> Result<bool> {
    let verdict = check_right_multiplicative(cat, w);
    if !verdict.valid {
        return Err(Error::NotRightMultiplicative(format!("{:?}", verdict.violation)));
    }
    let classes_xy = localize_hom_unchecked(cat, w, x, y);
    let all_classes: Vec<Vec<Vec<SpanClass>>> = (0..cat.objects.len())
        .map(|a| (0..cat.objects.len()).map(|b| localize_hom_unchecked(cat, w, a, b)).collect())
        .collect();
    for probe in probe_categories() {
        for f in w_inverting_functors(cat, w, &probe) {
            // value of a span: F(h) ∘ F(w)^-1
            let value = |(wi, h): (usize, usize)| {
                let inv = probe.inverse(f[wi]).expect("W maps to isomorphisms");
                probe.then(inv, f[h]).expect("composable")
            };
            for class in &classes_xy {
                let v = value(class.representative);
                if class.members.iter().any(|&m| value(m) != v) {
                    return Ok(false);
                }
            }
            for z in 0..cat.objects.len() {
                for c1 in &classes_xy {
                    for c2 in &all_classes[y][z] {
                        let Some(composite) = compose_spans(cat, w, c1.representative, c2.representative) else {
                            return Ok(false);
                        };
                        let expected = probe.then(value(c1.representative), value(c2.representative));
                        if Some(value(composite)) != expected {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    // [w, h] ∘ [id, w] = [id, h] for every span into x
    for class in &all_classes[x][y] {
        for &(wi, h) in &class.members {
            let z = cat.arrows[wi].src;
            let lhs = compose_spans(cat, w, (cat.identity(z), wi), (wi, h));
            let Some(lhs) = lhs else { return Ok(false) };
            let rhs_class = all_classes[z][y].iter().find(|c| c.members.contains(&(cat.identity(z), h)));
            if !rhs_class.is_some_and(|c| c.members.contains(&lhs)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> FiniteCategory {
        FiniteCategory::new(
            vec!["0".into(), "1".into(), "2".into()],
            &[("a".into(), 0, 1), ("b".into(), 1, 2), ("ab".into(), 0, 2)],
            &[("a", "b", "ab")],
        )
        .unwrap()
    }

    #[test]
    fn identities_only() {
        let c = chain();
        let w = ArrowClass::identities(&c);
        assert!(check_right_multiplicative(&c, &w).valid);
        assert_eq!(localize_hom(&c, &w, 0, 2).unwrap().len(), 1);
        assert!(verify_universal_property(&c, &w, 0, 2).unwrap());
    }

    #[test]
    fn inverting_one_arrow() {
        let c = FiniteCategory::new(vec!["A".into(), "B".into()], &[("w".into(), 0, 1)], &[]).unwrap();
        let w = ArrowClass::from_indices(&c, &[0, 1, 2]);
        assert!(check_right_multiplicative(&c, &w).valid);
        assert_eq!(localize_hom(&c, &w, 1, 0).unwrap().len(), 1);
        assert!(verify_universal_property(&c, &w, 1, 0).unwrap());
    }

    #[test]
    fn ore_counterexample() {
        // X -f-> D <-w- Y with nothing mapping into both
        let c = FiniteCategory::new(
            vec!["X".into(), "Y".into(), "D".into()],
            &[("f".into(), 0, 2), ("w".into(), 1, 2)],
            &[],
        )
        .unwrap();
        let w = ArrowClass::from_names(&c, &["id_X".into(), "id_Y".into(), "id_D".into(), "w".into()]).unwrap();
        let v = check_right_multiplicative(&c, &w);
        assert!(matches!(v.violation, Some(RmsViolation::Ore { .. })));
        assert!(localize_hom(&c, &w, 0, 1).is_err());
    }

    #[test]
    fn rejects_non_associative_table() {
        let err = FiniteCategory::from_monoid(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 0]]).unwrap_err();
        assert_eq!(err.kind(), "invalid_category");
    }
}
