//! Linear local models of derived charts: fixed subspaces, surjectivity of
//! an equivariant map on nontrivial isotypic pieces, and the fixed-point
//! detector for point classes in negative degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::character::CharacterTable;
use crate::cyclotomic::{CycInt, CycRat};
use crate::error::{violation, Error, Result};
use crate::linalg::{column_basis_q, max_abs_f64, rank_cyclotomic, rank_f64, rank_q, Matrix, QMatrix};
use crate::matrep::{MatrixRep, Projector, DEFAULT_TOLERANCE};
use crate::real::RealIrrepTable;

/// A linear map `V -> E` as a `dim E × dim V` matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearMap {
    Exact(QMatrix),
    Approx(Matrix<f64>),
}

impl LinearMap {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            LinearMap::Exact(m) => (m.nrows(), m.ncols()),
            LinearMap::Approx(m) => (m.nrows(), m.ncols()),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            LinearMap::Exact(m) => m.to_f64(),
            LinearMap::Approx(m) => m.clone(),
        }
    }
}

/// Tangent model `V`, obstruction model `E` and an equivariant `α: V -> E`.
#[derive(Debug, Clone)]
pub struct LinearChart {
    v: MatrixRep,
    e: MatrixRep,
    alpha: LinearMap,
}

fn tolerance(v: &MatrixRep, e: &MatrixRep) -> f64 {
    v.tolerance().max(e.tolerance())
}

impl LinearChart {
    /// Checks `α ρ_V(g) = ρ_E(g) α` for every `g` (exactly when all data is
    /// exact, else up to tolerance).
    pub fn new(v: MatrixRep, e: MatrixRep, alpha: LinearMap) -> Result<Self> {
        if !v.group().same_table(e.group()) {
            return Err(Error::InvalidInput("V and E are representations of different groups".into()));
        }
        if alpha.shape() != (e.dim(), v.dim()) {
            return Err(Error::InvalidInput(format!(
                "alpha has shape {:?}, expected ({}, {})",
                alpha.shape(),
                e.dim(),
                v.dim()
            )));
        }
        let group = v.group().clone();
        match (&alpha, v.is_exact() && e.is_exact()) {
            (LinearMap::Exact(a), true) => {
                for g in group.elements() {
                    let (rv, re) = (v.exact_matrix(g).expect("exact"), e.exact_matrix(g).expect("exact"));
                    if a.matmul(rv) != re.matmul(a) {
                        return Err(Error::InvalidInput(format!("alpha does not intertwine the action of element {g}")));
                    }
                }
            }
            _ => {
                let a = alpha.to_f64();
                let tol = tolerance(&v, &e);
                let scale = max_abs_f64(&a).max(1.0);
                for g in group.elements() {
                    let err = max_abs_f64(&a.matmul(&v.float_matrix(g)).sub(&e.float_matrix(g).matmul(&a)));
                    if err > tol * scale * (v.dim() + e.dim()) as f64 {
                        return Err(Error::ToleranceBreach(format!("intertwining error {err:e} at element {g}")));
                    }
                }
            }
        }
        Ok(LinearChart { v, e, alpha })
    }

    /// Chart whose map is the group average `(1/|G|) Σ ρ_E(g) a ρ_V(g)^-1`
    /// of an arbitrary exact matrix.
    pub fn averaged(v: MatrixRep, e: MatrixRep, a: &QMatrix) -> Result<Self> {
        if !v.is_exact() || !e.is_exact() {
            return Err(Error::InvalidInput("averaging needs exact representations".into()));
        }
        let group = v.group().clone();
        let mut sum = QMatrix::zeros(e.dim(), v.dim());
        for g in group.elements() {
            let term = e.exact_matrix(g).expect("exact").matmul(a).matmul(v.exact_matrix(group.inv(g)).expect("exact"));
            sum = sum.add(&term);
        }
        let alpha = sum.scale(&BigRational::new(BigInt::one(), BigInt::from(group.order())));
        LinearChart::new(v, e, LinearMap::Exact(alpha))
    }

    pub fn v(&self) -> &MatrixRep {
        &self.v
    }

    pub fn e(&self) -> &MatrixRep {
        &self.e
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    fn is_exact(&self) -> bool {
        self.v.is_exact() && self.e.is_exact() && matches!(self.alpha, LinearMap::Exact(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    Exact(Vec<Vec<BigRational>>),
    Approx(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedSubspace {
    pub dimension: usize,
    /// Columns of the averaging projector spanning its image.
    pub basis: Basis,
}

/// `V^G` as the image of the averaging projector, cross-checked against
/// `⟨χ_V, 1⟩`.
pub fn fixed_subspace(v: &MatrixRep, table: &CharacterTable) -> Result<FixedSubspace> {
    let chi = v.character(table)?;
    let expected = table.integer_inner_product(&chi, table.character(0))?;
    let out = match v.averaging_projector() {
        Some(p) => FixedSubspace { dimension: rank_q(&p), basis: Basis::Exact(column_basis_q(&p)) },
        None => {
            let group = v.group();
            let mut p = Matrix::<f64>::zeros(v.dim(), v.dim());
            for g in group.elements() {
                p = p.add(&v.float_matrix(g));
            }
            let p = p.scale(&(1.0 / group.order() as f64));
            let tol = v.tolerance().max(DEFAULT_TOLERANCE);
            let mut cols: Vec<usize> = Vec::new();
            for j in 0..v.dim() {
                let mut trial = cols.clone();
                trial.push(j);
                let sub = Matrix::from_fn(v.dim(), trial.len(), |r, c| *p.get(r, trial[c]));
                if rank_f64(&sub, tol * 1e2) == trial.len() {
                    cols = trial;
                }
            }
            FixedSubspace { dimension: cols.len(), basis: Basis::Approx(cols.iter().map(|&j| p.column(j)).collect()) }
        }
    };
    if out.dimension as i64 != expected {
        return Err(violation(format!(
            "averaging projector has rank {} but the character gives {expected}",
            out.dimension
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub irrep: usize,
    /// Rank of the `ρ`-isotypic piece of `V`.
    pub source_rank: usize,
    /// Rank of the `ρ`-isotypic piece of `E`.
    pub target_rank: usize,
    pub block_rank: usize,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurjectivityReport {
    /// Every block of a nontrivial irrep is onto its target piece.
    pub surjective: bool,
    pub blocks: Vec<BlockReport>,
    /// Largest entry of any cross-isotype block (exactly 0 in exact mode).
    pub max_cross_block: f64,
    pub exact: bool,
}

/// Splits `α` into blocks `P^E_σ α P^V_ρ`. Cross blocks (`σ ≠ ρ`) must
/// vanish; the verdict asks each nontrivial diagonal block to reach the rank
/// of `P^E_ρ`.
pub fn isotypic_surjectivity(chart: &LinearChart, real: &RealIrrepTable) -> Result<SurjectivityReport> {
    let pv = chart.v.isotypic_decomposition(real)?;
    let pe = chart.e.isotypic_decomposition(real)?;
    let mut blocks = Vec::with_capacity(pv.len());
    let mut max_cross = 0.0f64;
    if chart.is_exact() {
        let LinearMap::Exact(a) = &chart.alpha else { unreachable!() };
        let a = a.map(|x| CycRat::from_coeff(1, x.clone()));
        let exact = |p: &Projector| match p {
            Projector::Exact(m) => m.clone(),
            Projector::Approx(_) => unreachable!("exact representation"),
        };
        let left: Vec<Matrix<CycRat>> = pe.iter().map(|c| exact(&c.projector)).collect();
        let right: Vec<Matrix<CycRat>> = pv.iter().map(|c| exact(&c.projector).clone()).collect();
        for (s, l) in left.iter().enumerate() {
            let la = l.matmul(&a);
            for (r, rp) in right.iter().enumerate() {
                let block = la.matmul(rp);
                if s != r {
                    if !block.is_zero() {
                        return Err(violation(format!("cross-isotype block ({s}, {r}) of an equivariant map is nonzero")));
                    }
                    continue;
                }
                let block_rank = rank_cyclotomic(&block);
                let target_rank = pe[s].rank()?;
                blocks.push(BlockReport {
                    irrep: s,
                    source_rank: pv[r].rank()?,
                    target_rank,
                    block_rank,
                    surjective: block_rank == target_rank,
                });
            }
        }
    } else {
        let a = chart.alpha.to_f64();
        let tol = tolerance(&chart.v, &chart.e);
        let scale = max_abs_f64(&a).max(1.0);
        for (s, ce) in pe.iter().enumerate() {
            let la = ce.projector.to_f64().matmul(&a);
            for (r, cv) in pv.iter().enumerate() {
                let block = la.matmul(&cv.projector.to_f64());
                if s != r {
                    let m = max_abs_f64(&block);
                    max_cross = max_cross.max(m);
                    if m > tol * scale * 1e3 {
                        return Err(Error::ToleranceBreach(format!("cross-isotype block ({s}, {r}) has entry {m:e}")));
                    }
                    continue;
                }
                let block_rank = rank_f64(&block, tol.max(1e-7));
                let target_rank = ce.rank()?;
                blocks.push(BlockReport {
                    irrep: s,
                    source_rank: cv.rank()?,
                    target_rank,
                    block_rank,
                    surjective: block_rank == target_rank,
                });
            }
        }
    }
    let surjective = blocks.iter().filter(|b| b.irrep != 0).all(|b| b.surjective);
    Ok(SurjectivityReport { surjective, blocks, max_cross_block: max_cross, exact: chart.is_exact() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonzeroCertified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorReport {
    pub fixed_dim: usize,
    pub degree: i64,
    pub verdict: Verdict,
}

pub enum RepInput<'a> {
    Character(&'a [CycInt]),
    Matrices(&'a MatrixRep),
}

/// The class of `(BG, V/G, 0)` sits in degree `-dim V`; its fixed-point image
/// is nonzero when `V^G = 0`. Otherwise the detector is silent.
pub fn derived_class_detector(table: &CharacterTable, v: RepInput<'_>) -> Result<DetectorReport> {
    let (dim, fixed_dim) = match v {
        RepInput::Character(chi) => {
            table.decompose(chi)?;
            let dim = chi[0].as_rational().ok_or_else(|| Error::InvalidInput("character degree is not an integer".into()))?;
            (dim, table.integer_inner_product(chi, table.character(0))? as usize)
        }
        RepInput::Matrices(rep) => (rep.dim() as i64, fixed_subspace(rep, table)?.dimension),
    };
    let verdict = if fixed_dim == 0 { Verdict::NonzeroCertified } else { Verdict::Inconclusive };
    Ok(DetectorReport { fixed_dim, degree: -dim, verdict })
}
