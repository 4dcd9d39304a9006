use std::collections::BTreeMap;
use std::fmt;

use super::class::DivisorClass;
use super::surface::SurfaceType;
use crate::error::{Error, Result};

/// A divisor class together with assigned multiplicities at points.
///
/// Positive labels `1..=m` are the blown-up points; negative labels stand for
/// auxiliary points (such as a moving base point of a pencil) that carry no
/// exceptional curve and are never resolved.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BubbleClass {
    pub base: DivisorClass,
    pub multiplicities: BTreeMap<i64, i64>,
}

impl BubbleClass {
    pub fn new(base: DivisorClass) -> BubbleClass {
        BubbleClass { base, multiplicities: BTreeMap::new() }
    }

    pub fn with(mut self, point: i64, multiplicity: i64) -> BubbleClass {
        *self.multiplicities.entry(point).or_insert(0) += multiplicity;
        self
    }

    /// Whether some auxiliary point carries a nonzero multiplicity.
    pub fn has_symbolic_points(&self) -> bool {
        self.multiplicities.iter().any(|(&p, &k)| p < 0 && k != 0)
    }

    /// Drops auxiliary points and resolves the rest.
    pub fn resolve_declared(&self) -> DivisorClass {
        let mut c = self.base.coeffs().to_vec();
        for (&p, &k) in &self.multiplicities {
            if p >= 1 && (p as usize) < c.len() {
                c[p as usize] += k;
            }
        }
        DivisorClass::new(c)
    }
}

impl SurfaceType {
    /// `base + Σ mult(p)·E_p`. Every labelled point must be a blown-up point.
    pub fn resolve_bubble_class(&self, b: &BubbleClass) -> Result<DivisorClass> {
        self.check_class(&b.base)?;
        for &p in b.multiplicities.keys() {
            if p < 1 || p as usize > self.m() {
                return Err(Error::UnknownPoint(p));
            }
        }
        Ok(b.resolve_declared())
    }
}

impl fmt::Display for BubbleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.base)?;
        for (&p, &k) in &self.multiplicities {
            if k == 0 {
                continue;
            }
            let name = if p < 0 { format!("q{}", -p) } else { format!("p{p}") };
            match k {
                1 => write!(f, ", +{name}")?,
                -1 => write!(f, ", -{name}")?,
                k => write!(f, ", {k:+}{name}")?,
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BubbleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
