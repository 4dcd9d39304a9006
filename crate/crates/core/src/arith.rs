//! Integer arithmetic shared by the cone routines.
//!
//! The double description kernel runs over [`Ring`]: `i128` with checked
//! operations as a fast path, and `BigInt` when a checked operation
//! overflows. Every result is exact either way.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) trait Ring: Clone + Eq + Ord + Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Nonnegative gcd.
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_one(&self) -> bool;
    fn to_i64(&self) -> Option<i64>;

    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

pub(crate) fn lift<T: Ring>(v: &[i64]) -> Vec<T> {
    v.iter().map(|&x| T::from_i64(x)).collect()
}

pub(crate) fn dot<T: Ring>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Some(acc)
}

/// `s * x - t * y`, entrywise.
pub(crate) fn combine<T: Ring>(s: &T, x: &[T], t: &T, y: &[T]) -> Option<Vec<T>> {
    let neg_t = t.checked_neg()?;
    x.iter()
        .zip(y)
        .map(|(a, b)| s.checked_mul(a)?.checked_add(&neg_t.checked_mul(b)?))
        .collect()
}

/// Divides out the gcd of the entries, keeping the direction.
pub(crate) fn make_primitive<T: Ring>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}

pub(crate) fn lower<T: Ring>(v: &[T]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

/// Primitive form of an `i64` vector.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Exact dot product of two `i64` vectors.
pub fn dot_i64(a: &[i64], b: &[i64]) -> BigInt {
    let fast = a.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| {
        acc.checked_add((x as i128).checked_mul(y as i128)?)
    });
    match fast {
        Some(v) => BigInt::from(v),
        None => a
            .iter()
            .zip(b)
            .map(|(&x, &y)| BigInt::from(x) * BigInt::from(y))
            .sum(),
    }
}

/// Sign of the exact dot product.
pub fn dot_sign(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let fast = a.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| {
        acc.checked_add((x as i128).checked_mul(y as i128)?)
    });
    match fast {
        Some(v) => v.cmp(&0),
        None => dot_i64(a, b).cmp(&<BigInt as Zero>::zero()),
    }
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Row-reduces `rows` over the rationals; returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical integer basis of the row span: reduced echelon form, each row
/// scaled to a primitive integer vector with positive pivot.
pub(crate) fn integer_row_basis(rows: &[Vec<i64>], ncols: usize) -> Result<(Vec<Vec<i64>>, Vec<usize>)> {
    let q: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let (red, pivots) = rref(&q, ncols);
    let mut out = Vec::with_capacity(red.len());
    for row in red {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
        make_primitive(&mut ints);
        out.push(lower(&ints)?);
    }
    Ok((out, pivots))
}

/// Reduces `v` modulo the span of an echelon `basis` (as produced by
/// [`integer_row_basis`]) so that it vanishes on every pivot column, then
/// makes it primitive. Positive rescaling only.
pub(crate) fn reduce_modulo(v: &[i64], basis: &[Vec<i64>], pivots: &[usize]) -> Result<Vec<i64>> {
    let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    for (row, &p) in basis.iter().zip(pivots) {
        if Zero::is_zero(&w[p]) {
            continue;
        }
        let s = BigInt::from(row[p]);
        let t = w[p].clone();
        for (x, &b) in w.iter_mut().zip(row) {
            *x = &s * &*x - &t * BigInt::from(b);
        }
        make_primitive(&mut w);
    }
    make_primitive(&mut w);
    lower(&w)
}

/// Exact determinant of a square rational matrix.
pub(crate) fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    d
}
