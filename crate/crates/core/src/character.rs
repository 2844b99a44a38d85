//! Exact complex character tables by Dixon's method.
//!
//! The class-multiplication matrices are simultaneously diagonalized over a
//! prime field `F_p` with `p ≡ 1 (mod exp G)`. Each common eigenvector gives a
//! character modulo `p`, which is lifted to an exact cyclotomic integer from
//! the eigenvalue multiplicities of the element's cyclic subgroup.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::{CycInt, CycRat};
use crate::error::{violation, Result};
use crate::group::{ConjugacyClasses, Elem, FiniteGroup};

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ConjugacyClasses,
    exponent: usize,
    /// `characters[i][k]` = value of character `i` on class `k`.
    characters: Vec<Vec<CycInt>>,
    degrees: Vec<usize>,
    prime: u64,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.sizes()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// All values live in `Q(ζ_exponent)`.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn characters(&self) -> &[Vec<CycInt>] {
        &self.characters
    }

    pub fn character(&self, i: usize) -> &[CycInt] {
        &self.characters[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn value_at(&self, i: usize, g: Elem) -> &CycInt {
        &self.characters[i][self.classes.class_of(g)]
    }

    /// Class of `rep_k^j`.
    pub fn power_class(&self, k: usize, j: i64) -> usize {
        self.classes.class_of(self.group.pow(self.classes.representative(k), j))
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_g a(g) conj(b(g))` for class functions given per class.
    pub fn inner_product(&self, a: &[CycInt], b: &[CycInt]) -> CycRat {
        let sum = self
            .classes
            .classes
            .iter()
            .enumerate()
            .fold(CycInt::zero_in(1), |acc, (k, c)| acc + (&a[k] * &b[k].conj()).scale(&(c.len() as i64)));
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.group.order()));
        sum.to_rational_field().scale(&inv)
    }

    /// Inner product that must be a rational integer (e.g. a multiplicity).
    pub fn integer_inner_product(&self, a: &[CycInt], b: &[CycInt]) -> Result<i64> {
        let ip = self.inner_product(a, b);
        let q = ip.as_rational().ok_or_else(|| violation(format!("inner product {ip} is not rational")))?;
        if !q.is_integer() {
            return Err(violation(format!("inner product {q} is not an integer")));
        }
        i64::try_from(q.to_integer()).map_err(|_| violation("inner product overflows i64"))
    }

    /// Multiplicities of the irreducible characters in a class function;
    /// fails unless the function is a genuine character.
    pub fn decompose(&self, chi: &[CycInt]) -> Result<Vec<u64>> {
        self.characters
            .iter()
            .map(|irr| {
                let m = self.integer_inner_product(chi, irr)?;
                u64::try_from(m).map_err(|_| crate::Error::InvalidInput(format!("negative multiplicity {m}")))
            })
            .collect()
    }

    /// Checks Σd² = |G|, both orthogonality relations and the count of
    /// characters, all with exact arithmetic.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order();
        let r = self.classes.len();
        if self.characters.len() != r {
            return Err(violation("number of characters differs from number of classes"));
        }
        if self.degrees.iter().map(|d| d * d).sum::<usize>() != n {
            return Err(violation("sum of squared degrees differs from the group order"));
        }
        let sizes = self.class_sizes();
        let conj: Vec<Vec<CycInt>> = self.characters.iter().map(|c| c.iter().map(CycInt::conj).collect()).collect();
        for i in 0..r {
            for j in 0..r {
                let s = (0..r)
                    .fold(CycInt::zero_in(1), |acc, k| acc + (&self.characters[i][k] * &conj[j][k]).scale(&(sizes[k] as i64)));
                let want = if i == j { n as i64 } else { 0 };
                if s != CycInt::from_int(1, want) {
                    return Err(violation(format!("row orthogonality fails for characters {i}, {j}")));
                }
            }
        }
        for k in 0..r {
            for l in 0..r {
                let s = (0..r).fold(CycInt::zero_in(1), |acc, i| acc + &self.characters[i][k] * &conj[i][l]);
                let want = if k == l { (n / sizes[k]) as i64 } else { 0 };
                if s != CycInt::from_int(1, want) {
                    return Err(violation(format!("column orthogonality fails for classes {k}, {l}")));
                }
            }
        }
        Ok(())
    }

    fn is_trivial_character(values: &[CycInt]) -> bool {
        values.iter().all(|v| v.as_rational() == Some(1))
    }
}

/// Ordering of characters: degree, then the trivial character first, then
/// class values in decreasing lexicographic order.
fn character_order(a: &(usize, Vec<CycInt>), b: &(usize, Vec<CycInt>)) -> Ordering {
    a.0.cmp(&b.0)
        .then_with(|| {
            CharacterTable::is_trivial_character(&b.1).cmp(&CharacterTable::is_trivial_character(&a.1))
        })
        .then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                match y.lex_cmp(x) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    character_table_shared(Arc::new(group.clone()))
}

pub fn character_table_shared(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let exponent = group.exponent();
    let p = choose_prime(exponent as u64, n as u64);
    let f = Fp(p);
    let sizes = classes.sizes();

    // class multiplication coefficients: a[j][k][l] = #{x in C_j : x^-1 z in C_k}, z in C_l
    let mut coeff = vec![0u64; r * r * r];
    for l in 0..r {
        let z = classes.representative(l);
        for x in group.elements() {
            let j = classes.class_of(x);
            let k = classes.class_of(group.mul(group.inv(x), z));
            coeff[(j * r + k) * r + l] += 1;
        }
    }
    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        (0..r).map(|k| (0..r).map(|l| coeff[(j * r + k) * r + l] % p).collect()).collect()
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit(r, i)).collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(j);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split_space(&f, &space, &m)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(violation("class matrices do not split into one-dimensional eigenspaces"));
    }

    let inverse_class: Vec<usize> =
        (0..r).map(|k| classes.class_of(group.inv(classes.representative(k)))).collect();
    let root = f.pow(primitive_root(p), (p - 1) / exponent as u64);
    let mut rows: Vec<(usize, Vec<CycInt>)> = Vec::with_capacity(r);
    for space in spaces {
        let w = &space[0];
        if w[0] == 0 {
            return Err(violation("eigenvector vanishes on the identity class"));
        }
        let w0 = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, w0)).collect();
        let s = (0..r).fold(0, |acc, k| f.add(acc, f.mul(f.mul(omega[k], omega[inverse_class[k]]), f.inv(sizes[k] as u64 % p))));
        let d_sq = f.mul(n as u64 % p, f.inv(s));
        let degree = (1..=n).take_while(|d| d * d <= n).find(|&d| (d * d) as u64 % p == d_sq).ok_or_else(|| {
            violation("no admissible degree for a modular character")
        })?;
        let chi_mod: Vec<u64> =
            (0..r).map(|k| f.mul(f.mul(degree as u64 % p, omega[k]), f.inv(sizes[k] as u64 % p))).collect();
        let values = (0..r)
            .map(|k| lift_value(&f, &group, &classes, &chi_mod, k, exponent, root, degree))
            .collect::<Result<Vec<_>>>()?;
        rows.push((degree, values));
    }
    rows.sort_by(character_order);
    let table = CharacterTable {
        group,
        classes,
        exponent,
        degrees: rows.iter().map(|r| r.0).collect(),
        characters: rows.into_iter().map(|r| r.1).collect(),
        prime: p,
    };
    if table.degrees.iter().map(|d| d * d).sum::<usize>() != n {
        return Err(violation("sum of squared degrees differs from the group order"));
    }
    Ok(table)
}

/// Recovers `χ(g)` from `χ(g^s) mod p` via the multiplicities of each
/// eigenvalue `ζ_o^t` of `g`, `o = ord(g)`.
#[allow(clippy::too_many_arguments)]
fn lift_value(
    f: &Fp,
    group: &FiniteGroup,
    classes: &ConjugacyClasses,
    chi_mod: &[u64],
    k: usize,
    exponent: usize,
    root: u64,
    degree: usize,
) -> Result<CycInt> {
    let g = classes.representative(k);
    let o = group.element_order(g);
    let step = exponent / o;
    let zeta_o = f.pow(root, step as u64);
    let zeta_inv = f.inv(zeta_o);
    let power_vals: Vec<u64> = (0..o).map(|s| chi_mod[classes.class_of(group.pow(g, s as i64))]).collect();
    let o_inv = f.inv(o as u64 % f.0);
    let mut power = vec![0i64; exponent];
    let mut total = 0;
    for t in 0..o {
        let twist = f.pow(zeta_inv, t as u64);
        let mut acc = 0;
        let mut w = 1;
        for &v in &power_vals {
            acc = f.add(acc, f.mul(v, w));
            w = f.mul(w, twist);
        }
        let m = f.mul(acc, o_inv) as usize;
        if m > degree {
            return Err(violation(format!("eigenvalue multiplicity {m} exceeds degree {degree}")));
        }
        total += m;
        power[t * step] += m as i64;
    }
    if total != degree {
        return Err(violation("eigenvalue multiplicities do not sum to the degree"));
    }
    Ok(CycInt::from_power_coeffs(exponent, &power))
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// Splits an invariant subspace (basis rows in reduced echelon form) into
/// eigenspaces of `m` acting on column vectors.
fn split_space(f: &Fp, basis: &[Vec<u64>], m: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let s = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row")).collect();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| f.mat_vec(m, b)).collect();
    // restricted action: image_i = Σ_k a[k][i] b_k with a[k][i] = image_i[pivot_k]
    let a: Vec<Vec<u64>> = (0..s).map(|k| (0..s).map(|i| images[i][pivots[k]]).collect()).collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..f.0 {
        if found == s {
            break;
        }
        let shifted: Vec<Vec<u64>> =
            (0..s).map(|k| (0..s).map(|i| if k == i { f.sub(a[k][i], lambda) } else { a[k][i] }).collect()).collect();
        let null = f.nullspace(&shifted);
        if null.is_empty() {
            continue;
        }
        found += null.len();
        let vectors: Vec<Vec<u64>> = null
            .iter()
            .map(|y| {
                let mut v = vec![0; basis[0].len()];
                for (coef, b) in y.iter().zip(basis) {
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = f.add(*vi, f.mul(*coef, bi));
                    }
                }
                v
            })
            .collect();
        out.push(f.rref_rows(vectors));
    }
    if found != s {
        return Err(violation("class matrix is not diagonalizable over the chosen prime field"));
    }
    Ok(out)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2n`.
fn choose_prime(e: u64, n: u64) -> u64 {
    let mut p = e + 1;
    while p <= 2 * n || !is_prime(p) {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let f = Fp(p);
    (2..p).find(|&g| factors.iter().all(|&q| f.pow(g, (p - 1) / q) != 1)).unwrap_or(1)
}

/// Arithmetic modulo a small prime.
struct Fp(u64);

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b % self.0) % self.0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
    fn mat_vec(&self, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))).collect()
    }
    /// Reduced row echelon form of the given rows, zero rows dropped.
    fn rref_rows(&self, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            rows[r].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let factor = rows[i][c];
                    for j in 0..cols {
                        let v = self.sub(rows[i][j], self.mul(factor, rows[r][j]));
                        rows[i][j] = v;
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        rows
    }
    /// Basis of `{y : A y = 0}`.
    fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let cols = a.first().map_or(0, Vec::len);
        let reduced = self.rref_rows(a.to_vec());
        let pivots: Vec<usize> = reduced.iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero")).collect();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut y = vec![0; cols];
                y[free] = 1;
                for (row, &pc) in reduced.iter().zip(&pivots) {
                    y[pc] = self.sub(0, row[free]);
                }
                y
            })
            .collect()
    }
}
