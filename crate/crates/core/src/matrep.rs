//! Explicit matrix representations and their real isotypic decomposition.
//!
//! Exact representations carry rational matrices; their isotypic projectors
//! have entries in the cyclotomic field of the character values. Float
//! representations carry `f64` matrices and a relative tolerance.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::character::CharacterTable;
use crate::cyclotomic::{CycInt, CycRat};
use crate::error::{violation, Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::linalg::{max_abs_f64, rank_f64, Matrix, QMatrix};
use crate::morphism::Homomorphism;
use crate::real::RealIrrepTable;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum RepMatrices {
    Exact(Vec<QMatrix>),
    Approx { matrices: Vec<Matrix<f64>>, tolerance: f64 },
}

/// A representation given by one matrix per group element.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: RepMatrices,
}

impl MatrixRep {
    /// Exact representation; checks `ρ(gh) = ρ(g)ρ(h)` on all pairs.
    pub fn exact(group: Arc<FiniteGroup>, matrices: Vec<QMatrix>) -> Result<Self> {
        let dim = check_shapes(&group, matrices.iter().map(|m| (m.nrows(), m.ncols())))?;
        if matrices[group.identity()] != QMatrix::identity(dim) {
            return Err(Error::InvalidRepresentation("identity does not act as the identity matrix".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if matrices[g].matmul(&matrices[h]) != matrices[group.mul(g, h)] {
                    return Err(Error::InvalidRepresentation(format!("rho({g})rho({h}) != rho({g}{h})")));
                }
            }
        }
        Ok(MatrixRep { group, dim, matrices: RepMatrices::Exact(matrices) })
    }

    /// Fixed-precision representation; the homomorphism property is checked
    /// up to `tolerance` relative to the largest entry.
    pub fn approx(group: Arc<FiniteGroup>, matrices: Vec<Matrix<f64>>, tolerance: f64) -> Result<Self> {
        let dim = check_shapes(&group, matrices.iter().map(|m| (m.nrows(), m.ncols())))?;
        let scale = matrices.iter().map(max_abs_f64).fold(1.0, f64::max);
        let close = |a: &Matrix<f64>, b: &Matrix<f64>| max_abs_f64(&a.sub(b)) <= tolerance * scale * scale;
        if !close(&matrices[group.identity()], &Matrix::identity(dim)) {
            return Err(Error::InvalidRepresentation("identity does not act as the identity matrix".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if !close(&matrices[g].matmul(&matrices[h]), &matrices[group.mul(g, h)]) {
                    return Err(Error::ToleranceBreach(format!("rho({g})rho({h}) differs from rho({g}{h})")));
                }
            }
        }
        Ok(MatrixRep { group, dim, matrices: RepMatrices::Approx { matrices, tolerance } })
    }

    /// Exact representation determined by the images of a generating set.
    pub fn from_generator_images(group: Arc<FiniteGroup>, gens: &[Elem], images: Vec<QMatrix>) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::InvalidInput("one matrix per generator required".into()));
        }
        if group.closure(gens).len() != group.order() {
            return Err(Error::InvalidInput("elements do not generate the group".into()));
        }
        let dim = images.first().map_or(1, |m| m.nrows());
        let mut mats: Vec<Option<QMatrix>> = vec![None; group.order()];
        mats[group.identity()] = Some(QMatrix::identity(dim));
        let mut stack = vec![group.identity()];
        while let Some(x) = stack.pop() {
            for (&s, m) in gens.iter().zip(&images) {
                let y = group.mul(x, s);
                if mats[y].is_none() {
                    mats[y] = Some(mats[x].as_ref().expect("visited").matmul(m));
                    stack.push(y);
                }
            }
        }
        MatrixRep::exact(group, mats.into_iter().map(|m| m.expect("generated")).collect())
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let matrices = vec![QMatrix::identity(dim); group.order()];
        MatrixRep { group, dim, matrices: RepMatrices::Exact(matrices) }
    }

    /// One-dimensional representation through a homomorphism to `{±1} = C2`.
    pub fn sign(group: Arc<FiniteGroup>, to_c2: &Homomorphism) -> Result<Self> {
        let c2 = FiniteGroup::cyclic(2)?;
        let hom = Homomorphism::new(&group, &c2, to_c2.images().to_vec())?;
        let matrices = group
            .elements()
            .map(|g| QMatrix::from_int_rows(&[vec![if hom.apply(g) == 0 { 1 } else { -1 }]]))
            .collect();
        Ok(MatrixRep { group, dim: 1, matrices: RepMatrices::Exact(matrices) })
    }

    /// Left regular representation: `ρ(g) e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let matrices = group
            .elements()
            .map(|g| {
                let mut m = QMatrix::zeros(n, n);
                for h in 0..n {
                    m.set(group.mul(g, h), h, BigRational::one());
                }
                m
            })
            .collect();
        MatrixRep { group, dim: n, matrices: RepMatrices::Exact(matrices) }
    }

    /// Permutation representation on the left cosets of a subgroup.
    pub fn cosets(group: Arc<FiniteGroup>, subgroup: &[Elem]) -> Result<Self> {
        if !group.is_subgroup(subgroup) {
            return Err(Error::InvalidInput("not a subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut count = 0;
        for g in group.elements() {
            if coset_of[g] == usize::MAX {
                for &h in subgroup {
                    coset_of[group.mul(g, h)] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<Elem> = (0..count).map(|c| coset_of.iter().position(|&x| x == c).expect("coset")).collect();
        let matrices = group
            .elements()
            .map(|g| {
                let mut m = QMatrix::zeros(count, count);
                for (c, &r) in reps.iter().enumerate() {
                    m.set(coset_of[group.mul(g, r)], c, BigRational::one());
                }
                m
            })
            .collect();
        Ok(MatrixRep { group, dim: count, matrices: RepMatrices::Exact(matrices) })
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if !self.group.same_table(&other.group) {
            return Err(Error::InvalidInput("representations of different groups".into()));
        }
        let dim = self.dim + other.dim;
        let matrices = match (&self.matrices, &other.matrices) {
            (RepMatrices::Exact(a), RepMatrices::Exact(b)) => {
                RepMatrices::Exact(a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect())
            }
            _ => RepMatrices::Approx {
                matrices: self.group.elements().map(|g| self.float_matrix(g).direct_sum(&other.float_matrix(g))).collect(),
                tolerance: self.tolerance().max(other.tolerance()),
            },
        };
        Ok(MatrixRep { group: self.group.clone(), dim, matrices })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.matrices, RepMatrices::Exact(_))
    }

    pub fn matrices(&self) -> &RepMatrices {
        &self.matrices
    }

    /// Relative tolerance; zero in exact mode.
    pub fn tolerance(&self) -> f64 {
        match &self.matrices {
            RepMatrices::Exact(_) => 0.0,
            RepMatrices::Approx { tolerance, .. } => *tolerance,
        }
    }

    pub fn exact_matrix(&self, g: Elem) -> Option<&QMatrix> {
        match &self.matrices {
            RepMatrices::Exact(m) => Some(&m[g]),
            RepMatrices::Approx { .. } => None,
        }
    }

    pub fn float_matrix(&self, g: Elem) -> Matrix<f64> {
        match &self.matrices {
            RepMatrices::Exact(m) => m[g].to_f64(),
            RepMatrices::Approx { matrices, .. } => matrices[g].clone(),
        }
    }

    /// Elements acting as the identity.
    pub fn kernel(&self) -> Vec<Elem> {
        match &self.matrices {
            RepMatrices::Exact(m) => {
                let id = QMatrix::identity(self.dim);
                self.group.elements().filter(|&g| m[g] == id).collect()
            }
            RepMatrices::Approx { matrices, tolerance } => {
                let id = Matrix::<f64>::identity(self.dim);
                self.group.elements().filter(|&g| max_abs_f64(&matrices[g].sub(&id)) <= *tolerance).collect()
            }
        }
    }

    /// The character as an exact class function. Float traces are matched to
    /// a nonnegative integer combination of irreducible characters.
    pub fn character(&self, table: &CharacterTable) -> Result<Vec<CycInt>> {
        let classes = table.classes();
        match &self.matrices {
            RepMatrices::Exact(m) => (0..classes.len())
                .map(|k| {
                    let t = m[classes.representative(k)].trace();
                    if !t.is_integer() {
                        return Err(violation(format!("non-integral trace {t}")));
                    }
                    i64::try_from(t.to_integer())
                        .map(|v| CycInt::from_int(1, v))
                        .map_err(|_| violation("trace overflows i64"))
                })
                .collect(),
            RepMatrices::Approx { matrices, tolerance } => {
                let traces: Vec<f64> = (0..classes.len()).map(|k| matrices[classes.representative(k)].trace()).collect();
                let sizes = table.class_sizes();
                let n = self.group.order() as f64;
                let mut chi = vec![CycInt::zero_in(1); classes.len()];
                for i in 0..table.len() {
                    let m: f64 = (0..classes.len())
                        .map(|k| sizes[k] as f64 * traces[k] * table.character(i)[k].to_complex().0)
                        .sum::<f64>()
                        / n;
                    let rounded = m.round();
                    if (m - rounded).abs() > tolerance * self.dim.max(1) as f64 * 1e3 || rounded < 0.0 {
                        return Err(Error::ToleranceBreach(format!("multiplicity {m} of character {i} is not an integer")));
                    }
                    for (c, v) in chi.iter_mut().zip(table.character(i)) {
                        *c = &*c + &v.scale(&(rounded as i64));
                    }
                }
                for (k, t) in traces.iter().enumerate() {
                    let (re, im) = chi[k].to_complex();
                    if (re - t).abs() > tolerance * self.dim.max(1) as f64 * 1e3 || im.abs() > 1e-6 {
                        return Err(Error::ToleranceBreach(format!("trace {t} not matched by an exact character")));
                    }
                }
                Ok(chi)
            }
        }
    }

    /// `(1/|G|) Σ_g ρ(g)` in exact mode.
    pub fn averaging_projector(&self) -> Option<QMatrix> {
        let RepMatrices::Exact(m) = &self.matrices else { return None };
        let mut sum = QMatrix::zeros(self.dim, self.dim);
        for x in m {
            sum = sum.add(x);
        }
        Some(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order()))))
    }

    /// Decomposes the representation into real isotypic components, one per
    /// real irrep (zero projectors included).
    pub fn isotypic_decomposition(&self, real: &RealIrrepTable) -> Result<Vec<IsotypicComponent>> {
        if !real.group().same_table(&self.group) {
            return Err(Error::InvalidInput("irrep table belongs to a different group".into()));
        }
        let chi = self.character(real.character_table())?;
        let mult = real.decompose(&chi)?;
        let classes = real.character_table().classes();
        let components: Vec<IsotypicComponent> = real
            .entries()
            .iter()
            .map(|e| {
                let coef_num = e.real_dim as i64;
                let coef_den = (e.end_type.dim() * self.group.order()) as i64;
                let psi_inv = |g: Elem| &e.character[classes.class_of(self.group.inv(g))];
                let projector = match &self.matrices {
                    RepMatrices::Exact(m) => {
                        // accumulate per class, then weight by the character value
                        let mut p = Matrix::<CycRat>::zeros(self.dim, self.dim);
                        for class in &classes.classes {
                            let v = psi_inv(class[0]).to_rational_field();
                            if v.is_zero() {
                                continue;
                            }
                            let mut s = QMatrix::zeros(self.dim, self.dim);
                            for &g in class {
                                s = s.add(&m[g]);
                            }
                            p = p.add(&s.map(|x| v.scale(x)));
                        }
                        let c = BigRational::new(BigInt::from(coef_num), BigInt::from(coef_den));
                        Projector::Exact(p.map(|x| x.scale(&c)))
                    }
                    RepMatrices::Approx { matrices, .. } => {
                        let mut p = Matrix::<f64>::zeros(self.dim, self.dim);
                        for g in self.group.elements() {
                            p = p.add(&matrices[g].scale(&psi_inv(g).to_complex().0));
                        }
                        Projector::Approx(p.scale(&(coef_num as f64 / coef_den as f64)))
                    }
                };
                IsotypicComponent { irrep: e.id, multiplicity: mult[e.id], real_dim: e.real_dim, projector }
            })
            .collect();
        self.verify_components(&components)?;
        Ok(components)
    }

    /// Idempotence, sum to the identity, ranks equal to multiplicity × real
    /// dimension, and the trivial component equal to averaging. Together with
    /// Σ rank = dim these force pairwise annihilation.
    fn verify_components(&self, components: &[IsotypicComponent]) -> Result<()> {
        let tol = self.tolerance();
        let mut total_rank = 0;
        for c in components {
            let want = c.multiplicity as usize * c.real_dim;
            match &c.projector {
                Projector::Exact(p) => {
                    if p.matmul(p) != *p {
                        return Err(violation(format!("isotypic projector {} is not idempotent", c.irrep)));
                    }
                    if c.rank()? != want {
                        return Err(violation(format!("isotypic projector {} has the wrong rank", c.irrep)));
                    }
                }
                Projector::Approx(p) => {
                    let err = max_abs_f64(&p.matmul(p).sub(p));
                    if err > tol * max_abs_f64(p).max(1.0) * self.dim as f64 {
                        return Err(Error::ToleranceBreach(format!("projector {} idempotence error {err:e}", c.irrep)));
                    }
                    if c.rank()? != want {
                        return Err(Error::ToleranceBreach(format!("projector {} rank unstable under tolerance", c.irrep)));
                    }
                }
            }
            total_rank += want;
        }
        if total_rank != self.dim {
            return Err(violation("isotypic ranks do not sum to the dimension"));
        }
        match &self.matrices {
            RepMatrices::Exact(_) => {
                let mut sum = Matrix::<CycRat>::zeros(self.dim, self.dim);
                for c in components {
                    if let Projector::Exact(p) = &c.projector {
                        sum = sum.add(p);
                    }
                }
                if sum != Matrix::identity(self.dim) {
                    return Err(violation("isotypic projectors do not sum to the identity"));
                }
                let avg = self.averaging_projector().expect("exact");
                if components[0].projector != Projector::Exact(avg.map(|x| CycRat::from_coeff(1, x.clone()))) {
                    return Err(violation("trivial isotypic projector differs from averaging"));
                }
            }
            RepMatrices::Approx { .. } => {
                let mut sum = Matrix::<f64>::zeros(self.dim, self.dim);
                for c in components {
                    sum = sum.add(&c.projector.to_f64());
                }
                let err = max_abs_f64(&sum.sub(&Matrix::identity(self.dim)));
                if err > tol * self.dim as f64 {
                    return Err(Error::ToleranceBreach(format!("projector sum differs from identity by {err:e}")));
                }
            }
        }
        Ok(())
    }
}

fn check_shapes(group: &FiniteGroup, shapes: impl ExactSizeIterator<Item = (usize, usize)>) -> Result<usize> {
    if shapes.len() != group.order() {
        return Err(Error::InvalidRepresentation(format!(
            "{} matrices given for a group of order {}",
            shapes.len(),
            group.order()
        )));
    }
    let mut dim = None;
    for (r, c) in shapes {
        if r != c || r == 0 || dim.is_some_and(|d| d != r) {
            return Err(Error::InvalidRepresentation("matrices must be square of one common positive size".into()));
        }
        dim = Some(r);
    }
    Ok(dim.unwrap_or(1))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Projector {
    Exact(Matrix<CycRat>),
    Approx(Matrix<f64>),
}

impl Projector {
    pub fn to_f64(&self) -> Matrix<f64> {
        match self {
            Projector::Exact(p) => p.map(|x| x.to_complex().0),
            Projector::Approx(p) => p.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub irrep: usize,
    pub multiplicity: u64,
    pub real_dim: usize,
    pub projector: Projector,
}

impl IsotypicComponent {
    /// Rank of the projector: its trace in exact mode (valid for an
    /// idempotent), numerical rank in float mode.
    pub fn rank(&self) -> Result<usize> {
        match &self.projector {
            Projector::Exact(p) => {
                let t = p.trace();
                let q = t.as_rational().filter(|q| q.is_integer()).ok_or_else(|| violation("projector trace is not an integer"))?;
                usize::try_from(q.to_integer()).map_err(|_| violation("negative projector trace"))
            }
            Projector::Approx(p) => Ok(rank_f64(p, DEFAULT_TOLERANCE.max(1e-7))),
        }
    }
}

impl MatrixRep {
    /// Exact representation from integer matrices.
    pub fn exact_from_int(group: Arc<FiniteGroup>, matrices: &[Vec<Vec<i64>>]) -> Result<Self> {
        MatrixRep::exact(group, matrices.iter().map(|m| QMatrix::from_int_rows(m)).collect())
    }
}

/// Rotation by `2πk/n` as a float representation of the cyclic group of
/// order `n` (generator = element 1 of `FiniteGroup::cyclic`).
pub fn rotation_rep(n: usize, k: usize) -> Result<MatrixRep> {
    let group = Arc::new(FiniteGroup::cyclic(n)?);
    let matrices = group
        .elements()
        .map(|g| {
            // element g of the cyclic table is the g-th power of the generator
            let theta = 2.0 * std::f64::consts::PI * (k * g) as f64 / n as f64;
            Matrix::from_rows(vec![vec![theta.cos(), -theta.sin()], vec![theta.sin(), theta.cos()]])
        })
        .collect();
    MatrixRep::approx(group, matrices, DEFAULT_TOLERANCE)
}
