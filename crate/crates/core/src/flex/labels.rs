use std::fmt;
use std::str::FromStr;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::picard::{DivisorClass, SurfaceType};

/// Types of cones in the subdivision of the Mori cone by `−K` (and its
/// refinement along `L − E_m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeLabel {
    /// `Cone(−K, E_1, …, E_k)`.
    B(usize),
    /// `Cone(−K, E_1, …, E_{m−2}, L − E_{m−1} − E_m)`.
    BP,
    /// `Cone(E_1, …, E_{m−1}, L − E_1 − E_m, …, L − E_{m−1} − E_m)`.
    C,
    /// `Cone(−K, E_1, …, E_k, L − E_m)`.
    Ck(usize),
    /// `Cone(−K, E_1, …, E_{m−2}, L − E_{m−1} − E_m, L − E_m)`.
    CP,
}

impl fmt::Display for ConeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeLabel::B(k) => write!(f, "B({k})"),
            ConeLabel::BP => write!(f, "B(P)"),
            ConeLabel::C => write!(f, "C"),
            ConeLabel::Ck(k) => write!(f, "C({k})"),
            ConeLabel::CP => write!(f, "C(P)"),
        }
    }
}

impl FromStr for ConeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConeLabel> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownLabel(s.to_string());
        if t == "C" {
            return Ok(ConeLabel::C);
        }
        let (kind, rest) = t.split_at(t.len().min(1));
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
        match (kind, inner) {
            ("B", "P") => Ok(ConeLabel::BP),
            ("C", "P") => Ok(ConeLabel::CP),
            ("B", k) => Ok(ConeLabel::B(k.parse().map_err(|_| unknown())?)),
            ("C", k) => Ok(ConeLabel::Ck(k.parse().map_err(|_| unknown())?)),
            _ => Err(unknown()),
        }
    }
}

impl ConeLabel {
    pub fn is_valid_for(self, m: usize) -> bool {
        match self {
            ConeLabel::B(k) => k <= m,
            ConeLabel::Ck(k) => k < m,
            ConeLabel::BP | ConeLabel::CP => m >= 2,
            ConeLabel::C => m >= 1,
        }
    }
}

/// `B(0..=m), B(P), C, C(0..m), C(P)`: `2m + 4` labels.
pub fn cone_types(s: &SurfaceType) -> Vec<ConeLabel> {
    let m = s.m();
    let mut out: Vec<ConeLabel> = (0..=m).map(ConeLabel::B).collect();
    out.push(ConeLabel::BP);
    out.push(ConeLabel::C);
    out.extend((0..m).map(ConeLabel::Ck));
    out.push(ConeLabel::CP);
    out.retain(|l| l.is_valid_for(m));
    out
}

/// Generators of the representative of `label` for the standard contraction.
pub fn representative_generators(s: &SurfaceType, label: ConeLabel) -> Result<Vec<DivisorClass>> {
    let m = s.m();
    if !label.is_valid_for(m) {
        return Err(Error::UnknownLabel(label.to_string()));
    }
    let e = |i: usize| s.e(i).expect("index in range");
    let l = s.line();
    let k = s.anticanonical();
    let first = |n: usize| (1..=n).map(e).collect::<Vec<_>>();
    let lm = &l - &e(m);
    Ok(match label {
        ConeLabel::B(n) => [vec![k], first(n)].concat(),
        ConeLabel::BP => [vec![k], first(m - 2), vec![&lm - &e(m - 1)]].concat(),
        ConeLabel::C => {
            let mut g = first(m - 1);
            g.extend((1..m).map(|i| &lm - &e(i)));
            g
        }
        ConeLabel::Ck(n) => [vec![k], first(n), vec![lm]].concat(),
        ConeLabel::CP => [vec![k], first(m - 2), vec![&lm - &e(m - 1), lm]].concat(),
    })
}

pub fn cone_representative(s: &SurfaceType, label: ConeLabel) -> Result<Cone> {
    s.cone_of(&representative_generators(s, label)?)
}
