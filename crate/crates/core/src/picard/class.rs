use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A class `a·L + Σ c_i·E_i` in the Picard lattice of the plane blown up at
/// `m` points, stored as the coordinate vector `(a, c_1, …, c_m)`.
///
/// Note the sign convention: `L − E_1` is stored as `[1, -1, 0, …]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coeffs: Vec<i64>,
}

impl DivisorClass {
    /// Wraps a coordinate vector. The vector must have at least one entry.
    pub fn new(coeffs: Vec<i64>) -> DivisorClass {
        assert!(!coeffs.is_empty(), "a divisor class needs the L coordinate");
        DivisorClass { coeffs }
    }

    pub fn zero(m: usize) -> DivisorClass {
        DivisorClass::new(vec![0; m + 1])
    }

    /// The pullback `L` of a line.
    pub fn line(m: usize) -> DivisorClass {
        let mut c = vec![0; m + 1];
        c[0] = 1;
        DivisorClass::new(c)
    }

    /// The exceptional class `E_i`, with `i` in `1..=m`.
    pub fn exceptional(m: usize, i: usize) -> Result<DivisorClass> {
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, max: m });
        }
        let mut c = vec![0; m + 1];
        c[i] = 1;
        Ok(DivisorClass::new(c))
    }

    /// `−K = 3L − E_1 − … − E_m`.
    pub fn anticanonical(m: usize) -> DivisorClass {
        let mut c = vec![-1; m + 1];
        c[0] = 3;
        DivisorClass::new(c)
    }

    /// Number of blown-up points.
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// The `L` coordinate.
    pub fn line_degree(&self) -> i64 {
        self.coeffs[0]
    }

    /// Coefficient of `E_i`, `i` in `1..=m`.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    /// Intersection product with respect to `diag(1, −1, …, −1)`.
    pub fn pairing(&self, other: &DivisorClass) -> Result<i64> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), got: other.coeffs.len() });
        }
        Ok(pair_unchecked(&self.coeffs, &other.coeffs))
    }

    pub fn self_intersection(&self) -> i64 {
        pair_unchecked(&self.coeffs, &self.coeffs)
    }

    /// `D · (−K)`.
    pub fn anticanonical_degree(&self) -> i64 {
        3 * self.coeffs[0] + self.coeffs[1..].iter().sum::<i64>()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }

    /// Parses expressions like `2L-E1-E2`, `-K`, `E3 - E4`, `0`.
    pub fn parse(text: &str, m: usize) -> Result<DivisorClass> {
        let bad = || Error::ParseClass(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = vec![0i64; m + 1];
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coef: Option<i64> = if pos > start { Some(s[start..pos].parse().map_err(|_| bad())?) } else { None };
            match bytes.get(pos) {
                Some(b'L') => {
                    pos += 1;
                    out[0] += sign * coef.unwrap_or(1);
                }
                Some(b'K') => {
                    pos += 1;
                    // K = −(3L − ΣE)
                    let k = sign * coef.unwrap_or(1);
                    out[0] -= 3 * k;
                    for x in &mut out[1..] {
                        *x += k;
                    }
                }
                Some(b'E') => {
                    pos += 1;
                    let idx_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let i: usize = s[idx_start..pos].parse().map_err(|_| bad())?;
                    if i == 0 || i > m {
                        return Err(Error::IndexOutOfRange { index: i, max: m });
                    }
                    out[i] += sign * coef.unwrap_or(1);
                }
                None | Some(b'+') | Some(b'-') => match coef {
                    // a bare integer is only meaningful as the zero class
                    Some(0) => {}
                    _ => return Err(bad()),
                },
                Some(_) => return Err(bad()),
            }
        }
        Ok(DivisorClass::new(out))
    }
}

fn pair_unchecked(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

/// Intersection product of two classes.
pub fn pairing(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    a.pairing(b)
}

/// Canonical order: by `L` coordinate, then by the absolute values of the
/// `E` coordinates in decreasing lexicographic order, then by the signed
/// coordinates. This lists `E_1` before `E_2` and `L − E_1 − E_2` before
/// `L − E_1 − E_3`.
impl Ord for DivisorClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs[0]
            .cmp(&other.coeffs[0])
            .then_with(|| {
                let a = self.coeffs[1..].iter().map(|x| x.abs());
                let b = other.coeffs[1..].iter().map(|x| x.abs());
                b.cmp(a)
            })
            .then_with(|| self.coeffs[1..].cmp(&other.coeffs[1..]))
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, name: String| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            first = false;
            match c.abs() {
                1 => write!(f, "{sign}{name}"),
                n => write!(f, "{sign}{n}{name}"),
            }
        };
        term(f, self.coeffs[0], "L".to_string())?;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            term(f, c, format!("E{i}"))?;
        }
        if self.is_zero() {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "classes from different lattices");
        DivisorClass::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "classes from different lattices");
        DivisorClass::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(self.coeffs.iter().map(|x| -x).collect())
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(rhs.coeffs.iter().map(|x| self * x).collect())
    }
}

/// All classes `D` with `D·D = −1` and `D·(−K) = 1` in the lattice of `m`
/// points, in canonical order.
///
/// Writing `D = aL + Σ c_i E_i`, the conditions read `Σ c_i = 1 − 3a` and
/// `Σ c_i² = a² + 1`. Cauchy–Schwarz gives `(1 − 3a)² ≤ m(a² + 1)`, which
/// bounds `a`; the search then fills the `c_i` under the remaining
/// sum/square-sum budget.
pub fn exceptional_vectors(m: usize) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    let mi = m as i64;
    let mut a = -1i64;
    loop {
        let lhs = (1 - 3 * a) * (1 - 3 * a);
        let rhs = mi * (a * a + 1);
        if a > 0 && lhs > rhs {
            break;
        }
        if lhs <= rhs {
            let mut c = vec![0i64; m];
            fill(&mut c, 0, 1 - 3 * a, a * a + 1, &mut |c| {
                let mut v = Vec::with_capacity(m + 1);
                v.push(a);
                v.extend_from_slice(c);
                out.push(DivisorClass::new(v));
            });
        }
        a += 1;
    }
    out.sort();
    out
}

/// Assigns `c[k..]` so that the entries sum to `sum` and their squares to `sq`.
fn fill(c: &mut [i64], k: usize, sum: i64, sq: i64, emit: &mut dyn FnMut(&[i64])) {
    let rest = (c.len() - k) as i64;
    if rest == 0 {
        if sum == 0 && sq == 0 {
            emit(c);
        }
        return;
    }
    if sq < 0 || sum * sum > rest * sq {
        return;
    }
    let bound = (sq as f64).sqrt() as i64 + 1;
    for x in -bound..=bound {
        if x * x > sq {
            continue;
        }
        c[k] = x;
        fill(c, k + 1, sum - x, sq - x * x, emit);
    }
    c[k] = 0;
}
