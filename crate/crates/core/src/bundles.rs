//! Stable and coarsely stable vector bundles over `BG`, their automorphism
//! groups, restriction along homomorphisms, and stable framings of `BK`.
//!
//! A stable framing of `BK` is a torsor over `(Z/2)^{R-type irreps}`; it is
//! stored as a bit vector relative to the all-zero base point. The canonical
//! involution adds a trivial summand acting by `-1`, which changes the
//! framing only in the trivial-isotypic coordinate, so it flips bit 0.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{violation, Error, Result};
use crate::morphism::Homomorphism;
use crate::real::{induced_irrep_bijection, restriction_matrix, EndType, RealIrrepTable};

/// A virtual representation: integer coordinates over the real irreps.
#[derive(Debug, Clone)]
pub struct StableBundle {
    table: Arc<RealIrrepTable>,
    coords: Vec<i64>,
}

/// A trivial part plus nonnegative multiplicities of the nontrivial irreps.
#[derive(Debug, Clone)]
pub struct CoarseStableBundle {
    table: Arc<RealIrrepTable>,
    trivial_part: i64,
    coords: Vec<u64>,
}

/// `(Z/2)^k` with one factor per contributing irrep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroup {
    pub contributors: Vec<usize>,
}

impl AutGroup {
    /// `k` in `(Z/2)^k`.
    pub fn rank(&self) -> usize {
        self.contributors.len()
    }

    pub fn order(&self) -> u128 {
        1u128 << self.contributors.len()
    }
}

impl StableBundle {
    pub fn new(table: Arc<RealIrrepTable>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != table.len() {
            return Err(Error::InvalidInput(format!("{} coordinates for {} real irreps", coords.len(), table.len())));
        }
        Ok(StableBundle { table, coords })
    }

    pub fn zero(table: Arc<RealIrrepTable>) -> Self {
        let n = table.len();
        StableBundle { table, coords: vec![0; n] }
    }

    pub fn table(&self) -> &Arc<RealIrrepTable> {
        &self.table
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `Σ coords[ρ] · dim ρ`.
    pub fn virtual_rank(&self) -> i64 {
        self.coords.iter().zip(self.table.entries()).map(|(c, e)| c * e.real_dim as i64).sum()
    }

    pub fn add(&self, other: &StableBundle) -> Result<StableBundle> {
        if !Arc::ptr_eq(&self.table, &other.table) && !self.table.group().same_table(other.table.group()) {
            return Err(Error::InvalidInput("bundles over different groups".into()));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(StableBundle { table: self.table.clone(), coords })
    }

    /// Every R-type irrep contributes a `Z/2`, whatever the coordinates.
    pub fn aut_group(&self) -> AutGroup {
        AutGroup { contributors: self.table.real_type_ids() }
    }
}

impl CoarseStableBundle {
    pub fn new(table: Arc<RealIrrepTable>, trivial_part: i64, coords: Vec<u64>) -> Result<Self> {
        if coords.len() + 1 != table.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for {} nontrivial real irreps",
                coords.len(),
                table.len() - 1
            )));
        }
        Ok(CoarseStableBundle { table, trivial_part, coords })
    }

    pub fn trivial_part(&self) -> i64 {
        self.trivial_part
    }

    /// Coordinates over the nontrivial irreps (ids `1..`).
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// The underlying stable bundle.
    pub fn stabilize(&self) -> StableBundle {
        let mut coords = vec![self.trivial_part];
        coords.extend(self.coords.iter().map(|&c| c as i64));
        StableBundle { table: self.table.clone(), coords }
    }

    /// The trivial irrep plus nontrivial R-type irreps that actually occur.
    pub fn aut_group(&self) -> AutGroup {
        let contributors = self
            .table
            .real_type_ids()
            .into_iter()
            .filter(|&id| id == 0 || self.coords[id - 1] > 0)
            .collect();
        AutGroup { contributors }
    }
}

/// Pullback of a stable bundle over `G` along `phi: K -> G`.
pub fn restrict_bundle(b: &StableBundle, phi: &Homomorphism, source: Arc<RealIrrepTable>) -> Result<StableBundle> {
    let m = restriction_matrix(phi, &source, &b.table)?;
    let mut coords = vec![0i64; source.len()];
    for (rho, row) in m.iter().enumerate() {
        for (sigma, &mult) in row.iter().enumerate() {
            coords[sigma] += b.coords[rho] * mult as i64;
        }
    }
    let out = StableBundle { table: source, coords };
    if out.virtual_rank() != b.virtual_rank() {
        return Err(violation("restriction changed the virtual rank"));
    }
    Ok(out)
}

/// A stable framing of `BK`: one bit per R-type irrep of `K`, in the order
/// of `RealIrrepTable::real_type_ids` (bit 0 is the trivial irrep).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Framing {
    pub bits: Vec<bool>,
}

impl Framing {
    pub fn from_mask(mask: u64, width: usize) -> Self {
        Framing { bits: (0..width).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    /// The canonical involution.
    pub fn involution(&self) -> Framing {
        let mut bits = self.bits.clone();
        bits[0] = !bits[0];
        Framing { bits }
    }
}

/// Mask form of the involution.
pub fn involution_mask(mask: u64) -> u64 {
    mask ^ 1
}

/// All `2^r` framings, ordered by mask.
pub fn framings(table: &RealIrrepTable) -> Result<Vec<Framing>> {
    let width = table.real_type_ids().len();
    if width > 20 {
        return Err(Error::CapExceeded { what: "framing bits", size: width, cap: 20 });
    }
    Ok((0..1u64 << width).map(|m| Framing::from_mask(m, width)).collect())
}

/// Permutation of framing bit positions induced by an isomorphism
/// `alpha: K -> K'`: bit `i` of a framing of `K` moves to `perm[i]`.
pub fn framing_bit_permutation(alpha: &Homomorphism, source: &RealIrrepTable, target: &RealIrrepTable) -> Result<Vec<usize>> {
    let bijection = induced_irrep_bijection(alpha, source, target)?;
    let src_bits = source.real_type_ids();
    let dst_bits = target.real_type_ids();
    src_bits
        .iter()
        .map(|&id| {
            let image = bijection[id];
            if target.entry(image).end_type != EndType::R {
                return Err(violation("induced bijection does not preserve end types"));
            }
            Ok(dst_bits.iter().position(|&d| d == image).expect("R-type id"))
        })
        .collect()
}

pub fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    perm.iter().enumerate().fold(0, |acc, (i, &j)| acc | ((mask >> i & 1) << j))
}

pub fn transport_framing(
    framing: &Framing,
    alpha: &Homomorphism,
    source: &RealIrrepTable,
    target: &RealIrrepTable,
) -> Result<Framing> {
    let perm = framing_bit_permutation(alpha, source, target)?;
    if perm.len() != framing.bits.len() {
        return Err(Error::InvalidInput("framing does not belong to the source group".into()));
    }
    if perm[0] != 0 {
        return Err(violation("isomorphism moved the trivial representation"));
    }
    Ok(Framing::from_mask(permute_mask(framing.mask(), &perm), perm.len()))
}
