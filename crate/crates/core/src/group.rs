//! Finite groups stored as full multiplication tables.
//!
//! Every group in this crate is materialized: elements are the indices
//! `0..order` and the product of `g` and `h` is a table lookup. Groups built
//! from permutation generators get a canonical breadth-first element ordering
//! so that every downstream output is reproducible.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element.
pub type Elem = usize;

/// Limits applied while building and validating groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    /// Largest closure accepted by [`FiniteGroup::from_permutations`].
    pub max_order: usize,
    /// Associativity is checked on all triples up to this order and sampled above it.
    pub assoc_check_bound: usize,
    /// Number of sampled triples above `assoc_check_bound`.
    pub assoc_samples: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions { max_order: 10_000, assoc_check_bound: 128, assoc_samples: 200_000 }
    }
}

/// Default cap on the order of groups whose subgroup lattice is enumerated.
pub const SUBGROUP_ORDER_CAP: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: Elem,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

/// Partition of a group into conjugacy classes, ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<Elem>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Least element of class `k`.
    pub fn representative(&self, k: usize) -> Elem {
        self.classes[k][0]
    }

    pub fn class_of(&self, g: Elem) -> usize {
        self.class_of[g]
    }
}

/// A conjugacy class of subgroups, carried by one representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupClass {
    /// Sorted element indices of the representative subgroup.
    pub representative: Vec<Elem>,
    pub normalizer_order: usize,
    pub conjugates_count: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.len()
    }
}

fn invalid(invariant: impl Into<String>) -> Error {
    Error::InvalidTable { invariant: invariant.into() }
}

impl FiniteGroup {
    /// The group with one element.
    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], identity: 0, inverses: vec![0], labels: None }
    }

    /// The cyclic group `Z/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("order must be positive"));
        }
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect::<Vec<Vec<_>>>();
        Self::from_table(&rows, &GroupOptions::default())
    }

    /// Validates a multiplication table (`rows[g][h]` is the index of `g*h`).
    pub fn from_table(rows: &[Vec<usize>], opts: &GroupOptions) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(invalid("table is empty"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("row {g} has length {} instead of {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(invalid(format!("entry {x} in row {g} is out of range")));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table, opts)
    }

    fn from_flat(n: usize, table: Vec<u32>, opts: &GroupOptions) -> Result<Self> {
        let mut seen = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                let x = table[g * n + h] as usize;
                if seen[x] == g {
                    return Err(invalid(format!("latin square: row {g} repeats {x}")));
                }
                seen[x] = g;
            }
        }
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for h in 0..n {
            for g in 0..n {
                let x = table[g * n + h] as usize;
                if seen[x] == h {
                    return Err(invalid(format!("latin square: column {h} repeats {x}")));
                }
                seen[x] = h;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e * n + g] as usize == g && table[g * n + e] as usize == g))
            .ok_or_else(|| invalid("no two-sided identity"))?;
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g * n + h] as usize == identity)
                .ok_or_else(|| invalid(format!("element {g} has no right inverse")))?;
            if table[h * n + g] as usize != identity {
                return Err(invalid(format!("element {g} has no two-sided inverse")));
            }
            inverses[g] = h;
        }
        let group = FiniteGroup { order: n, table, identity, inverses, labels: None };
        group.check_associativity(opts)?;
        Ok(group)
    }

    fn check_associativity(&self, opts: &GroupOptions) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| invalid(format!("associativity fails at ({a}, {b}, {c})"));
        if n <= opts.assoc_check_bound {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0b1_ca1c);
            for _ in 0..opts.assoc_samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// Closure of permutation generators, with elements listed breadth-first
    /// from the identity over the generators in input order. Returns the
    /// group together with the permutation realizing each element.
    ///
    /// Products compose as functions: `(p*q)[i] = p[q[i]]`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        opts: &GroupOptions,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for (i, p) in generators.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has length {} but degree is {degree}",
                    p.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {i} is not a permutation of 0..{degree}"
                    )));
                }
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, Elem> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y: Vec<usize> = s.iter().map(|&i| elements[x][i]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= opts.max_order {
                        return Err(Error::CapExceeded {
                            what: "permutation group closure",
                            size: elements.len() + 1,
                            cap: opts.max_order,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        let mut buf = vec![0; degree];
        for p in &elements {
            for q in &elements {
                for i in 0..degree {
                    buf[i] = p[q[i]];
                }
                table.push(index[&buf] as u32);
            }
        }
        let mut group = Self::from_flat(n, table, opts)?;
        group.labels = Some(elements.iter().map(|p| cycle_notation(p)).collect());
        Ok((group, elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: Elem, h: Elem) -> Elem {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: Elem) -> Elem {
        self.inverses[g]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// The table as nested rows, suitable for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|g| (0..self.order).map(|h| self.mul(g, h)).collect()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidInput(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// True when both groups have literally the same table.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn pow(&self, g: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|g| self.element_order(g)).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    /// `h g h^-1`.
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn commutes(&self, g: Elem, h: Elem) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| (g + 1..self.order).all(|h| self.commutes(g, h)))
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements().filter(|&g| self.elements().all(|h| self.commutes(g, h))).collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        let mut out = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, elements: &[Elem]) -> bool {
        let mut inside = vec![false; self.order];
        for &g in elements {
            if g >= self.order {
                return false;
            }
            inside[g] = true;
        }
        inside[self.identity]
            && elements.iter().all(|&a| inside[self.inv(a)] && elements.iter().all(|&b| inside[self.mul(a, b)]))
    }

    /// Greedy generating set: elements by decreasing order (then index), kept
    /// whenever they enlarge the span.
    pub fn generating_set(&self) -> Vec<Elem> {
        let orders = self.element_orders();
        let mut candidates: Vec<Elem> = self.elements().filter(|&g| g != self.identity).collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(orders[g]), g));
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut size = 1;
        for g in candidates {
            if size == self.order {
                break;
            }
            if !span[g] {
                gens.push(g);
                let sub = self.closure(&gens);
                size = sub.len();
                for x in sub {
                    span[x] = true;
                }
            }
        }
        gens
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut class: Vec<Elem> = self.elements().map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = k;
            }
            classes.push(class);
        }
        ConjugacyClasses { classes, class_of }
    }

    /// The centralizer `{g : gs = sg for all s in S}`.
    pub fn centralizer(&self, set: &[Elem]) -> SubgroupClass {
        let elems: Vec<Elem> =
            self.elements().filter(|&g| set.iter().all(|&s| self.commutes(g, s))).collect();
        self.subgroup_class_of(elems)
    }

    /// Sorted conjugate `h S h^-1`.
    pub fn conjugate_set(&self, set: &[Elem], h: Elem) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&g| self.conjugate(g, h)).collect();
        out.sort_unstable();
        out
    }

    /// Elements normalizing the (sorted) subgroup `sub`.
    pub fn normalizer(&self, sub: &[Elem]) -> Vec<Elem> {
        self.elements().filter(|&h| self.conjugate_set(sub, h) == sub).collect()
    }

    /// Packages a subgroup (any element order) with its normalizer order and
    /// number of conjugates. The representative is the subgroup itself.
    pub fn subgroup_class_of(&self, mut elements: Vec<Elem>) -> SubgroupClass {
        elements.sort_unstable();
        elements.dedup();
        let normalizer_order = self.normalizer(&elements).len();
        SubgroupClass {
            conjugates_count: self.order / normalizer_order,
            normalizer_order,
            representative: elements,
        }
    }

    /// Every subgroup, found by extending known subgroups by one element at a time.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Vec<Elem>>> {
        if self.order > cap {
            return Err(Error::CapExceeded { what: "subgroup enumeration group order", size: self.order, cap });
        }
        let trivial = vec![self.identity];
        let mut seen: HashSet<Vec<Elem>> = HashSet::from([trivial.clone()]);
        let mut frontier = vec![(trivial, Vec::<Elem>::new())];
        let mut all = Vec::new();
        while let Some((sub, gens)) = frontier.pop() {
            let mut inside = vec![false; self.order];
            sub.iter().for_each(|&x| inside[x] = true);
            for g in self.elements().filter(|&g| !inside[g]) {
                let mut ext = gens.clone();
                ext.push(g);
                let bigger = self.closure(&ext);
                if seen.insert(bigger.clone()) {
                    frontier.push((bigger, ext));
                }
            }
            all.push(sub);
        }
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(all)
    }

    /// One representative per conjugacy class of subgroups, with the
    /// lexicographically least conjugate as representative; sorted by
    /// (order, representative).
    pub fn subgroup_classes(&self) -> Result<Vec<SubgroupClass>> {
        self.subgroup_classes_capped(SUBGROUP_ORDER_CAP)
    }

    pub fn subgroup_classes_capped(&self, cap: usize) -> Result<Vec<SubgroupClass>> {
        let subs = self.all_subgroups(cap)?;
        let mut by_canonical: BTreeMap<(usize, Vec<Elem>), usize> = BTreeMap::new();
        for sub in &subs {
            let conjugates: HashSet<Vec<Elem>> = self.elements().map(|h| self.conjugate_set(sub, h)).collect();
            let canonical = conjugates.iter().min().cloned().expect("nonempty");
            by_canonical.insert((sub.len(), canonical), conjugates.len());
        }
        Ok(by_canonical
            .into_iter()
            .map(|((_, representative), conjugates_count)| SubgroupClass {
                normalizer_order: self.order / conjugates_count,
                conjugates_count,
                representative,
            })
            .collect())
    }

    /// Normal subgroups sorted by (order, elements).
    pub fn normal_subgroups(&self) -> Result<Vec<Vec<Elem>>> {
        Ok(self
            .subgroup_classes()?
            .into_iter()
            .filter(|c| c.conjugates_count == 1)
            .map(|c| c.representative)
            .collect())
    }

    /// Materializes a subgroup as a group in its own right. Elements of the
    /// result are the sorted elements of `elements`; the returned embedding
    /// maps each back into `self`.
    pub fn subgroup(&self, elements: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
        let mut embedding = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        if !self.is_subgroup(&embedding) {
            return Err(Error::InvalidInput("element set is not a subgroup".into()));
        }
        let mut position = vec![usize::MAX; self.order];
        for (i, &g) in embedding.iter().enumerate() {
            position[g] = i;
        }
        let m = embedding.len();
        let table = embedding
            .iter()
            .flat_map(|&a| embedding.iter().map(move |&b| (a, b)))
            .map(|(a, b)| position[self.mul(a, b)] as u32)
            .collect();
        let mut sub = Self::from_flat(m, table, &GroupOptions::default())?;
        if let Some(labels) = &self.labels {
            sub.labels = Some(embedding.iter().map(|&g| labels[g].clone()).collect());
        }
        Ok((sub, embedding))
    }

    /// The quotient by a normal subgroup. Cosets are ordered by least element;
    /// returns the quotient and the projection `g -> gN`.
    pub fn quotient(&self, normal: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
        let mut normal = normal.to_vec();
        normal.sort_unstable();
        normal.dedup();
        if !self.is_subgroup(&normal) || self.normalizer(&normal).len() != self.order {
            return Err(Error::InvalidInput("not a normal subgroup".into()));
        }
        let mut coset_min = vec![usize::MAX; self.order];
        for g in self.elements() {
            if coset_min[g] == usize::MAX {
                let coset: Vec<Elem> = normal.iter().map(|&x| self.mul(g, x)).collect();
                let least = *coset.iter().min().expect("nonempty");
                for x in coset {
                    coset_min[x] = least;
                }
            }
        }
        let mut reps: Vec<Elem> = coset_min.clone();
        reps.sort_unstable();
        reps.dedup();
        let index: HashMap<Elem, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let projection: Vec<Elem> = coset_min.iter().map(|r| index[r]).collect();
        let m = reps.len();
        let table =
            reps.iter().flat_map(|&a| reps.iter().map(move |&b| (a, b))).map(|(a, b)| projection[self.mul(a, b)] as u32).collect();
        let quotient = Self::from_flat(m, table, &GroupOptions::default())?;
        Ok((quotient, projection))
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n, m) = (self.order, other.order);
        let table = (0..n * m)
            .flat_map(|x| (0..n * m).map(move |y| (x, y)))
            .map(|(x, y)| (self.mul(x / m, y / m) * m + other.mul(x % m, y % m)) as u32)
            .collect();
        Self::from_flat(n * m, table, &GroupOptions::default())
    }
}

/// Cycle notation with 0-indexed points, `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Builds the group generated by permutations with default options.
pub fn group_from_generators(degree: usize, generators: &[Vec<usize>]) -> Result<FiniteGroup> {
    FiniteGroup::from_permutations(degree, generators, &GroupOptions::default()).map(|(g, _)| g)
}
