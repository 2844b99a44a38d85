//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^(φ(n)-1)`, i.e. reduced modulo the cyclotomic polynomial `Φ_n`,
//! so equal numbers in the same field have equal coordinates. Throughout,
//! `ζ_n` is the complex number `exp(2πi/n)`. Binary operations on elements of
//! different fields `Q(ζ_n)`, `Q(ζ_m)` first embed both into `Q(ζ_lcm(n,m))`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficient ring for cyclotomic numbers.
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[derive(Debug)]
struct Basis {
    n: usize,
    phi: usize,
    /// `powers[k]` = coordinates of `ζ^k` for `k < n`.
    powers: Vec<Vec<i64>>,
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n % d == 0)
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n > 0);
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n).filter(|&d| d < n) {
        let den = cyclotomic_polynomial(d);
        num = exact_div(&num, &den);
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn basis(n: usize) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic basis cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let poly = cyclotomic_polynomial(n);
            let phi = poly.len() - 1;
            let mut powers = Vec::with_capacity(n);
            let mut v = vec![0i64; phi];
            v[0] = 1;
            for _ in 0..n {
                powers.push(v.clone());
                // multiply by x and reduce with x^phi = -sum poly[i] x^i
                let top = v[phi - 1];
                for i in (1..phi).rev() {
                    v[i] = v[i - 1] - top * poly[i];
                }
                v[0] = -top * poly[0];
            }
            Arc::new(Basis { n, phi, powers })
        })
        .clone()
}

#[derive(Clone)]
pub struct Cyclotomic<T: Coeff> {
    basis: Arc<Basis>,
    coeffs: Vec<T>,
}

/// Cyclotomic integers, the value type of character tables.
pub type CycInt = Cyclotomic<i64>;
/// Cyclotomic numbers with rational coordinates.
pub type CycRat = Cyclotomic<BigRational>;

impl<T: Coeff> Cyclotomic<T> {
    pub fn zero_in(n: usize) -> Self {
        let basis = basis(n);
        let coeffs = vec![T::zero(); basis.phi];
        Cyclotomic { basis, coeffs }
    }

    pub fn from_coeff(n: usize, c: T) -> Self {
        let mut z = Self::zero_in(n);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(n: usize, v: i64) -> Self {
        Self::from_coeff(n, T::from_i64(v))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        let basis = basis(n);
        let k = k.rem_euclid(n as i64) as usize;
        let coeffs = basis.powers[k].iter().map(|&c| T::from_i64(c)).collect();
        Cyclotomic { basis, coeffs }
    }

    /// Reduces `Σ c_k ζ_n^k` with `c` indexed by exponent (any length; exponents taken mod n).
    pub fn from_power_coeffs(n: usize, power_coeffs: &[T]) -> Self {
        let basis = basis(n);
        let mut coeffs = vec![T::zero(); basis.phi];
        for (k, c) in power_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (out, &p) in coeffs.iter_mut().zip(&basis.powers[k % n]) {
                if p != 0 {
                    *out = out.clone() + c.clone() * T::from_i64(p);
                }
            }
        }
        Cyclotomic { basis, coeffs }
    }

    /// Order `n` of the field `Q(ζ_n)` this element is stored in.
    pub fn field(&self) -> usize {
        self.basis.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Embeds into `Q(ζ_m)`; `m` must be a multiple of the current field order.
    pub fn lift(&self, m: usize) -> Self {
        let n = self.basis.n;
        if m == n {
            return self.clone();
        }
        assert!(m % n == 0, "cannot lift Q(ζ_{n}) into Q(ζ_{m})");
        let step = m / n;
        let mut power = vec![T::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            power[j * step] = c.clone();
        }
        Self::from_power_coeffs(m, &power)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = num_integer::lcm(a.basis.n, b.basis.n);
        (a.lift(m), b.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a coefficient if it lies in `Q`.
    pub fn as_rational(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclotomic { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Applies the Galois automorphism `ζ -> ζ^k` (`k` coprime to the field order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.basis.n;
        let mut power = vec![T::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = ((j as i64) * k).rem_euclid(n as i64) as usize;
            power[e] = power[e].clone() + c.clone();
        }
        Self::from_power_coeffs(n, &power)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.basis.n as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
            let c = c.to_f64();
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    /// Lexicographic comparison of coordinates; both operands must live in the same field.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering
    where
        T: PartialOrd,
    {
        assert_eq!(self.basis.n, other.basis.n, "lexicographic comparison across fields");
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.partial_cmp(b) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Cyclotomic<U> {
        Cyclotomic { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.basis.n != other.basis.n {
            let (a, b) = Self::common(self, other);
            return a.add_ref(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Cyclotomic { basis: self.basis.clone(), coeffs }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.basis.n != other.basis.n {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        let n = self.basis.n;
        if n == 1 {
            return Self::from_coeff(1, self.coeffs[0].clone() * other.coeffs[0].clone());
        }
        let mut power = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                power[k] = power[k].clone() + a.clone() * b.clone();
            }
        }
        Self::from_power_coeffs(n, &power)
    }
}

impl CycInt {
    pub fn to_rational_field(&self) -> CycRat {
        self.map_coeffs(|&c| BigRational::from_integer(BigInt::from(c)))
    }
}

impl<T: Coeff> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.basis.n == other.basis.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl<T: Coeff> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coeff> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.basis.n;
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match j {
                0 => format!("{c}"),
                1 => format!("{c}*z{n}"),
                _ => format!("{c}*z{n}^{j}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<T: Coeff> Add for Cyclotomic<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: Coeff> Add<&Cyclotomic<T>> for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        self.add_ref(rhs)
    }
}

impl<T: Coeff> Neg for Cyclotomic<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { basis: self.basis, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Coeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        self.clone().neg()
    }
}

impl<T: Coeff> Sub for Cyclotomic<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<T: Coeff> Sub<&Cyclotomic<T>> for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        self.add_ref(&-rhs)
    }
}

impl<T: Coeff> Mul for Cyclotomic<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Coeff> Mul<&Cyclotomic<T>> for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Coeff> Zero for Cyclotomic<T> {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl<T: Coeff> One for Cyclotomic<T> {
    fn one() -> Self {
        Self::from_int(1, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24).len(), 9);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2usize, 3, 5, 8, 12, 24] {
            let sum = (0..n as i64).fold(CycInt::zero_in(n), |acc, k| acc + CycInt::root_of_unity(n, k));
            assert!(sum.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conjugate_of_cube_root() {
        let w = CycInt::root_of_unity(3, 1);
        assert_eq!(w.conj(), CycInt::root_of_unity(3, 2));
        assert_eq!((&w * &w.conj()).as_rational(), Some(1));
        assert_eq!((&w + &w.conj()).as_rational(), Some(-1));
    }

    #[test]
    fn lifting_respects_embedding() {
        let i4 = CycInt::root_of_unity(4, 1);
        assert_eq!(i4, CycInt::root_of_unity(12, 3));
        assert_eq!(CycInt::root_of_unity(3, 1) * CycInt::root_of_unity(4, 1), CycInt::root_of_unity(12, 7));
        assert_eq!(CycInt::from_int(1, 5), CycInt::from_int(20, 5));
    }

    #[test]
    fn golden_ratio_relation() {
        // 2cos(2π/5) = ζ + ζ^-1 satisfies x^2 + x - 1 = 0
        let x = CycInt::root_of_unity(5, 1) + CycInt::root_of_unity(5, -1);
        let lhs = &(&x * &x) + &x;
        assert_eq!(lhs.as_rational(), Some(1));
        let (re, im) = x.to_complex();
        assert!((re - 0.618_033_988_749_895).abs() < 1e-12 && im.abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn multiplication_matches_complex_embedding(
            n in 1usize..=24,
            a in proptest::collection::vec(-4i64..=4, 24),
            b in proptest::collection::vec(-4i64..=4, 24),
        ) {
            let x = CycInt::from_power_coeffs(n, &a[..n]);
            let y = CycInt::from_power_coeffs(n, &b[..n]);
            let (xr, xi) = x.to_complex();
            let (yr, yi) = y.to_complex();
            let (pr, pi) = (&x * &y).to_complex();
            prop_assert!((pr - (xr * yr - xi * yi)).abs() < 1e-6);
            prop_assert!((pi - (xr * yi + xi * yr)).abs() < 1e-6);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        }
    }
}
