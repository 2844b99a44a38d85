//! Dense matrices over exact and floating scalars, with rank computations.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycRat, Cyclotomic};

pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

pub type QMatrix = Matrix<BigRational>;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).take(self.rows).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols).clone() * other.get(i % other.rows, j % other.cols).clone()
        })
    }
}

impl QMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect(),
        )
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN))
    }
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        for j in 0..m.cols {
            m.data.swap(r * m.cols + j, p * m.cols + j);
        }
        let inv = m.get(r, c).recip();
        for j in 0..m.cols {
            let v = m.get(r, j).clone() * inv.clone();
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(m: &QMatrix) -> usize {
    rref(&mut m.clone()).len()
}

/// A basis of the column space, taken from the columns of `m` itself.
pub fn column_basis_q(m: &QMatrix) -> Vec<Vec<BigRational>> {
    let pivots = rref(&mut m.clone());
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// Rank with pivots below `tol * max(1, max|entry|)` treated as zero.
pub fn rank_f64(m: &Matrix<f64>, tol: f64) -> usize {
    let mut a = m.clone();
    let scale = a.data.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let threshold = tol * scale;
    let mut rank = 0;
    for c in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let (p, best) = (rank..a.rows)
            .map(|i| (i, a.get(i, c).abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            continue;
        }
        for j in 0..a.cols {
            a.data.swap(rank * a.cols + j, p * a.cols + j);
        }
        let pivot = *a.get(rank, c);
        for i in rank + 1..a.rows {
            let f = a.get(i, c) / pivot;
            if f == 0.0 {
                continue;
            }
            for j in c..a.cols {
                let v = a.get(i, j) - f * a.get(rank, j);
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

pub fn max_abs_f64(m: &Matrix<f64>) -> f64 {
    m.data.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Exact rank over the cyclotomic field containing all entries, computed as
/// the rank of the rational matrix of the underlying `Q`-linear map divided
/// by the field degree.
pub fn rank_cyclotomic(m: &Matrix<CycRat>) -> usize {
    let n = m.data.iter().map(Cyclotomic::field).fold(1, num_integer::lcm);
    let lifted: Vec<CycRat> = m.data.iter().map(|x| x.lift(n)).collect();
    let degree = Cyclotomic::<BigRational>::zero_in(n).coeffs().len();
    if degree == 1 {
        let q = Matrix { rows: m.rows, cols: m.cols, data: lifted.iter().map(|x| x.coeffs()[0].clone()).collect() };
        return rank_q(&q);
    }
    let basis: Vec<CycRat> = (0..degree as i64).map(|j| Cyclotomic::root_of_unity(n, j)).collect();
    let mut big = QMatrix::zeros(m.rows * degree, m.cols * degree);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let a = &lifted[i * m.cols + j];
            if a.is_zero() {
                continue;
            }
            for (k, b) in basis.iter().enumerate() {
                let prod = a * b;
                for (l, c) in prod.coeffs().iter().enumerate() {
                    big.set(i * degree + l, j * degree + k, c.clone());
                }
            }
        }
    }
    let r = rank_q(&big);
    debug_assert_eq!(r % degree, 0);
    r / degree
}

/// Smith normal form invariant factors (the nonzero diagonal entries,
/// positive, each dividing the next) of an integer matrix.
pub fn smith_invariant_factors(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: entry of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = floor_div(a.get(i, t), a.get(t, t));
                for j in t..cols {
                    let v = a.get(i, j) - &q * a.get(t, j);
                    a.set(i, j, v);
                }
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = floor_div(a.get(t, j), a.get(t, t));
                for i in t..rows {
                    let v = a.get(i, j) - &q * a.get(i, t);
                    a.set(i, j, v);
                }
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t into the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if !a.get(i, t).is_zero() && a.get(i, t).abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a.get(t, j).is_zero() && a.get(t, j).abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            // pivot must divide the rest of the block
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a.get(t, j) + a.get(i, j);
                        a.set(t, j, v);
                    }
                }
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
        t += 1;
    }
    factors
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn swap_rows<T: Scalar>(a: &mut Matrix<T>, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..a.cols {
            a.data.swap(r1 * a.cols + j, r2 * a.cols + j);
        }
    }
}

fn swap_cols<T: Scalar>(a: &mut Matrix<T>, c1: usize, c2: usize) {
    if c1 != c2 {
        for i in 0..a.rows {
            a.data.swap(i * a.cols + c1, i * a.cols + c2);
        }
    }
}
