//! Exact rational arithmetic and fraction-free linear algebra.
//!
//! Every quantity in the crate (surgery coefficients, linking data,
//! rational Thurston-Bennequin and rotation numbers) lives in [`Rational`].
//! Determinants and linear solves run fraction-free over the integers
//! (Bareiss elimination) after clearing row denominators, so no step ever
//! rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is singular (determinant 0)")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid rational literal {0:?}: expected \"p/q\" or \"n\"")]
    BadRational(String),
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        // BigRational::new panics on a zero denominator and reduces otherwise.
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying BigRational.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::BadRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ExactError> {
            let t = t.strip_prefix('+').unwrap_or(t);
            if t.is_empty() || t.starts_with(['+', ' ']) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let numer = parse_int(n)?;
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let denom = parse_int(d)?;
                if denom.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(numer, denom))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Immutable square matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(ExactError::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { dim, entries })
    }

    pub fn from_integer_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from an entry function `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.dim).map(move |i| self.row(i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        check_len(self.dim, v.len())?;
        Ok(self.rows().map(|row| dot(row, v)).collect())
    }

    /// Entries as integers, when every entry is integral and fits in `i64`.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows()
            .map(|row| row.iter().map(Rational::to_i64).collect())
            .collect()
    }

    pub fn det(&self) -> Rational {
        det(self)
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SquareMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

fn check_len(expected: usize, actual: usize) -> Result<(), ExactError> {
    if expected == actual {
        Ok(())
    } else {
        Err(ExactError::DimensionMismatch { expected, actual })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Exact `Σ aᵢ·bᵢ`.
pub fn inner_product(a: &[Rational], b: &[Rational]) -> Result<Rational, ExactError> {
    check_len(a.len(), b.len())?;
    Ok(dot(a, b))
}

/// Scales each row to integers. Returns the integer rows and the product
/// of the per-row scale factors.
fn clear_denominators(rows: impl Iterator<Item = Vec<Rational>>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale_product = BigInt::one();
    let int_rows = rows
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale_product *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    (int_rows, scale_product)
}

/// In-place Bareiss elimination on the leading `n` columns of `a`.
///
/// Returns `None` when the leading `n×n` block is singular, otherwise the
/// sign of the row permutation applied. On success `a[n-1][n-1]` is the
/// determinant of the (permuted) leading block and every division is exact.
fn bareiss(a: &mut [Vec<BigInt>], n: usize) -> Option<i8> {
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, swap);
            sign = -sign;
        }
        let width = a[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Exact determinant by fraction-free elimination. The empty matrix has
/// determinant 1.
pub fn det(m: &SquareMatrix) -> Rational {
    let n = m.dim();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scale) = clear_denominators(m.rows().map(<[Rational]>::to_vec));
    match bareiss(&mut a, n) {
        None => Rational::zero(),
        Some(sign) => {
            let d = a[n - 1][n - 1].clone() * BigInt::from(sign);
            Rational::new(d, scale)
        }
    }
}

/// The unique exact `x` with `m·x = v`.
pub fn solve(m: &SquareMatrix, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
    let n = m.dim();
    check_len(n, v.len())?;
    let augmented = m.rows().zip(v).map(|(row, b)| {
        let mut r = row.to_vec();
        r.push(b.clone());
        r
    });
    let (mut a, _) = clear_denominators(augmented);
    bareiss(&mut a, n).ok_or(ExactError::SingularMatrix)?;

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from(a[i][n].clone());
        for j in i + 1..n {
            acc = acc - Rational::from(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from(a[i][i].clone());
    }
    Ok(x)
}
