//! Frobenius–Schur indicators and the real irreducible representations of a
//! finite group, read off from the complex character table.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::character::{character_table_shared, CharacterTable};
use crate::cyclotomic::CycInt;
use crate::error::{violation, Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::morphism::Homomorphism;

/// Endomorphism division algebra of a real irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndType {
    R,
    C,
    H,
}

impl EndType {
    /// Real dimension of the division algebra.
    pub fn dim(self) -> usize {
        match self {
            EndType::R => 1,
            EndType::C => 2,
            EndType::H => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EndType::R => "R",
            EndType::C => "C",
            EndType::H => "H",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealIrrep {
    pub id: usize,
    pub real_dim: usize,
    pub end_type: EndType,
    /// Indices into the complex character table; two for type C.
    pub constituents: Vec<usize>,
    /// Character of the real representation, per conjugacy class. Values are
    /// real but need not be rational.
    pub character: Vec<CycInt>,
}

#[derive(Debug, Clone)]
pub struct RealIrrepTable {
    table: CharacterTable,
    indicators: Vec<i8>,
    entries: Vec<RealIrrep>,
}

/// `(1/|G|) Σ_g χ_i(g²)`, which must be -1, 0 or 1.
pub fn frobenius_schur(table: &CharacterTable, i: usize) -> Result<i8> {
    let classes = table.classes();
    let group = table.group();
    let sum = classes.classes.iter().fold(CycInt::zero_in(1), |acc, c| {
        let sq = group.mul(c[0], c[0]);
        acc + table.value_at(i, sq).scale(&(c.len() as i64))
    });
    let total = sum.as_rational().ok_or_else(|| violation("indicator sum is not rational"))?;
    let n = group.order() as i64;
    if total % n != 0 {
        return Err(violation(format!("indicator sum {total} not divisible by {n}")));
    }
    match total / n {
        v @ -1..=1 => Ok(v as i8),
        v => Err(violation(format!("Frobenius-Schur indicator {v} out of range"))),
    }
}

pub fn real_irreps(group: &FiniteGroup) -> Result<RealIrrepTable> {
    RealIrrepTable::new(character_table_shared(Arc::new(group.clone()))?)
}

pub fn real_irreps_shared(group: Arc<FiniteGroup>) -> Result<RealIrrepTable> {
    RealIrrepTable::new(character_table_shared(group)?)
}

impl RealIrrepTable {
    pub fn new(table: CharacterTable) -> Result<Self> {
        let r = table.len();
        let indicators = (0..r).map(|i| frobenius_schur(&table, i)).collect::<Result<Vec<_>>>()?;
        let mut used = vec![false; r];
        let mut raw: Vec<(usize, EndType, Vec<usize>, Vec<CycInt>)> = Vec::new();
        for i in 0..r {
            if used[i] {
                continue;
            }
            used[i] = true;
            let chi = table.character(i);
            let d = table.degrees()[i];
            match indicators[i] {
                1 => raw.push((d, EndType::R, vec![i], chi.to_vec())),
                -1 => raw.push((2 * d, EndType::H, vec![i], chi.iter().map(|v| v.scale(&2)).collect())),
                _ => {
                    let conj: Vec<CycInt> = chi.iter().map(CycInt::conj).collect();
                    let j = (0..r)
                        .find(|&j| !used[j] && table.character(j) == conj.as_slice())
                        .ok_or_else(|| violation(format!("character {i} has indicator 0 but no conjugate partner")))?;
                    used[j] = true;
                    let sum = chi.iter().zip(&conj).map(|(a, b)| a + b).collect();
                    raw.push((2 * d, EndType::C, vec![i, j], sum));
                }
            }
        }
        raw.sort_by(|a, b| real_order((a.0, &a.3), (b.0, &b.3)));
        let entries = raw
            .into_iter()
            .enumerate()
            .map(|(id, (real_dim, end_type, constituents, character))| RealIrrep {
                id,
                real_dim,
                end_type,
                constituents,
                character,
            })
            .collect();
        let out = RealIrrepTable { table, indicators, entries };
        out.verify()?;
        Ok(out)
    }

    /// Checks Σ dim²/dim End = |G| and that every complex character is used once.
    pub fn verify(&self) -> Result<()> {
        let total: usize = self.entries.iter().map(|e| e.real_dim * e.real_dim / e.end_type.dim()).sum();
        if total != self.group().order() {
            return Err(violation(format!("real irrep bookkeeping gives {total}, expected {}", self.group().order())));
        }
        let mut seen = vec![0; self.table.len()];
        for e in &self.entries {
            for &c in &e.constituents {
                seen[c] += 1;
            }
            let want = match e.end_type {
                EndType::R => 1,
                EndType::C => 0,
                EndType::H => -1,
            };
            if e.constituents.iter().any(|&c| self.indicators[c] != want) {
                return Err(violation(format!("end type of real irrep {} disagrees with its indicator", e.id)));
            }
        }
        if seen.iter().any(|&s| s != 1) {
            return Err(violation("complex characters not consumed exactly once"));
        }
        if self.entries.first().map(|e| e.real_dim != 1 || !is_trivial(&e.character)) != Some(false) {
            return Err(violation("first real irrep is not the trivial representation"));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    pub fn character_table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn indicators(&self) -> &[i8] {
        &self.indicators
    }

    pub fn entries(&self) -> &[RealIrrep] {
        &self.entries
    }

    pub fn entry(&self, id: usize) -> &RealIrrep {
        &self.entries[id]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ids of the R-type entries, in table order. The trivial representation
    /// is always first.
    pub fn real_type_ids(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.end_type == EndType::R).map(|e| e.id).collect()
    }

    pub fn value_at(&self, id: usize, g: Elem) -> &CycInt {
        &self.entries[id].character[self.table.classes().class_of(g)]
    }

    /// Multiplicities of the real irreps in a real representation with the
    /// given character (per class): `⟨χ, ψ_ρ⟩ / dim End ρ`.
    pub fn decompose(&self, chi: &[CycInt]) -> Result<Vec<u64>> {
        self.entries
            .iter()
            .map(|e| {
                let ip = self.table.integer_inner_product(chi, &e.character)?;
                let d = e.end_type.dim() as i64;
                if ip < 0 || ip % d != 0 {
                    return Err(Error::InvalidInput(format!(
                        "class function is not the character of a real representation (pairing {ip} with irrep {})",
                        e.id
                    )));
                }
                Ok((ip / d) as u64)
            })
            .collect()
    }
}

fn is_trivial(values: &[CycInt]) -> bool {
    values.iter().all(|v| v.as_rational() == Some(1))
}

fn real_order(a: (usize, &[CycInt]), b: (usize, &[CycInt])) -> Ordering {
    a.0.cmp(&b.0).then_with(|| is_trivial(b.1).cmp(&is_trivial(a.1))).then_with(|| {
        a.1.iter()
            .zip(b.1)
            .map(|(x, y)| y.lex_cmp(x))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}

/// Multiplicities of the real irreps of `K` in the restriction of real irrep
/// `rho` of `G` along `phi: K -> G`.
pub fn restriction_multiplicities(
    phi: &Homomorphism,
    source: &RealIrrepTable,
    target: &RealIrrepTable,
    rho: usize,
) -> Result<Vec<u64>> {
    let k = source.group();
    if phi.domain_order() != k.order() || phi.images().iter().any(|&x| x >= target.group().order()) {
        return Err(Error::InvalidInput("homomorphism does not match the given groups".into()));
    }
    let classes = source.character_table().classes();
    let pulled: Vec<CycInt> =
        (0..classes.len()).map(|c| target.value_at(rho, phi.apply(classes.representative(c))).clone()).collect();
    let mult = source.decompose(&pulled)?;
    let dim: u64 = mult.iter().zip(source.entries()).map(|(m, e)| m * e.real_dim as u64).sum();
    if dim != target.entry(rho).real_dim as u64 {
        return Err(violation("restriction does not preserve dimension"));
    }
    Ok(mult)
}

/// `matrix[rho][sigma]`: multiplicity of `sigma ∈ K̂` in `rho ∈ Ĝ` restricted along `phi`.
pub fn restriction_matrix(phi: &Homomorphism, source: &RealIrrepTable, target: &RealIrrepTable) -> Result<Vec<Vec<u64>>> {
    (0..target.len()).map(|rho| restriction_multiplicities(phi, source, target, rho)).collect()
}

/// The bijection `K̂ -> K̂'` induced by an isomorphism `alpha: K -> K'`:
/// `sigma` maps to the irrep whose character composed with `alpha` is `sigma`'s.
pub fn induced_irrep_bijection(alpha: &Homomorphism, source: &RealIrrepTable, target: &RealIrrepTable) -> Result<Vec<usize>> {
    if !alpha.is_bijective(target.group()) {
        return Err(Error::InvalidInput("map is not an isomorphism".into()));
    }
    let classes = source.character_table().classes();
    let out = source
        .entries()
        .iter()
        .map(|e| {
            target
                .entries()
                .iter()
                .position(|t| {
                    (0..classes.len()).all(|c| &e.character[c] == target.value_at(t.id, alpha.apply(classes.representative(c))))
                })
                .ok_or_else(|| violation(format!("real irrep {} has no image under the isomorphism", e.id)))
        })
        .collect::<Result<Vec<_>>>()?;
    for (s, &t) in out.iter().enumerate() {
        if source.entry(s).end_type != target.entry(t).end_type {
            return Err(violation("induced bijection does not preserve end types"));
        }
    }
    Ok(out)
}

/// Smallest `N` such that every irreducible character occurs in
/// `V ⊕ V^⊗2 ⊕ ... ⊕ V^⊗N`, for a faithful character `V` given per class.
pub fn min_faithful_tensor_power(table: &CharacterTable, v: &[CycInt]) -> Result<usize> {
    let mult = table.decompose(v)?;
    let degree = v[0].as_rational().ok_or_else(|| Error::InvalidInput("degree is not an integer".into()))?;
    if degree <= 0 {
        return Err(Error::InvalidInput("character of the zero representation".into()));
    }
    let sizes = table.class_sizes();
    let kernel_order: usize =
        (0..v.len()).filter(|&k| v[k].as_rational() == Some(degree)).map(|k| sizes[k]).sum();
    if kernel_order > 1 {
        return Err(Error::NotFaithful { kernel_order });
    }
    let r = table.len();
    // support[j] = irreducibles occurring in χ_j · V
    let support: Vec<Vec<bool>> = (0..r)
        .map(|j| {
            let prod: Vec<CycInt> = table.character(j).iter().zip(v).map(|(a, b)| a * b).collect();
            table.decompose(&prod).map(|m| m.iter().map(|&x| x > 0).collect())
        })
        .collect::<Result<_>>()?;
    let mut current: Vec<bool> = mult.iter().map(|&m| m > 0).collect();
    let mut seen = current.clone();
    let limit = table.group().order().max(1);
    for n in 1..=limit {
        if seen.iter().all(|&s| s) {
            return Ok(n);
        }
        let mut next = vec![false; r];
        for j in (0..r).filter(|&j| current[j]) {
            for (i, &s) in support[j].iter().enumerate() {
                next[i] |= s;
            }
        }
        for (s, &x) in seen.iter_mut().zip(&next) {
            *s |= x;
        }
        current = next;
    }
    Err(violation("tensor powers of a faithful character did not exhaust the irreducibles"))
}
