use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::CylinderCollection;
use crate::cone::{section_volume_within, union_section_volume_within, Cone};
use crate::cylinder::{ConstructionKind, Cylinder, Signature};
use crate::error::{Error, Result};
use crate::picard::SurfaceType;

/// Maximum number of cylinders generated by [`SurfaceType::all_cylinders`]
/// before deduplication.
pub const DEFAULT_CYLINDER_LIMIT: usize = 100_000;

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl SurfaceType {
    /// Every cylinder of the given constructions over every contraction,
    /// deduplicated by classes and listed in canonical order.
    ///
    /// Parameters: lines use each center; tangent cylinders use a conic
    /// through five points (all points when `m ≤ 5`) with the tangent line
    /// through one of the remaining points and singleton groups otherwise;
    /// cuspidal pencils use every 4-subset.
    pub fn all_cylinders(self: &Arc<Self>, kinds: &[ConstructionKind]) -> Result<CylinderCollection> {
        self.all_cylinders_capped(kinds, DEFAULT_CYLINDER_LIMIT)
    }

    pub fn all_cylinders_capped(self: &Arc<Self>, kinds: &[ConstructionKind], limit: usize) -> Result<CylinderCollection> {
        let m = self.m();
        let points: Vec<usize> = (1..=m).collect();
        let cusp = kinds.contains(&ConstructionKind::CuspCubic)
            && (2..=5).contains(&self.degree())
            && (self.degree() != 2 || self.flags().admits_cuspidal_anticanonical);
        let tangent_conic = m.min(5);
        let per_set = if kinds.contains(&ConstructionKind::Lines) { m } else { 0 }
            + if kinds.contains(&ConstructionKind::Tangent) {
                binomial(m, tangent_conic) * (m - tangent_conic).max(1)
            } else {
                0
            }
            + if cusp { binomial(m, 4) } else { 0 };
        if per_set == 0 {
            return Ok(CylinderCollection::empty(self));
        }
        let sets = self.contraction_sets();
        if sets.len().saturating_mul(per_set) > limit {
            return Err(Error::EnumerationLimit { what: "cylinders", limit });
        }

        let mut found: BTreeMap<Signature, Cylinder> = BTreeMap::new();
        let mut add = |u: Cylinder| {
            found.entry(u.signature()).or_insert(u);
        };
        for c in &sets {
            if kinds.contains(&ConstructionKind::Lines) {
                for &i in &points {
                    add(Cylinder::make_lines(self, c, i)?);
                }
            }
            if kinds.contains(&ConstructionKind::Tangent) {
                for conic in subsets(&points, tangent_conic) {
                    let rest: Vec<usize> = points.iter().copied().filter(|p| !conic.contains(p)).collect();
                    if rest.is_empty() {
                        add(Cylinder::make_tangent(self, c, &conic, &[], &[])?);
                    }
                    for &t in &rest {
                        add(Cylinder::make_tangent(self, c, &conic, &[t], &[])?);
                    }
                }
            }
            if cusp {
                for four in subsets(&points, 4) {
                    add(Cylinder::make_cuspcubic(self, c, &four)?);
                }
            }
        }
        CylinderCollection::new(self, found.into_values().collect())
    }
}

/// Fraction of the section `{level = 1}` of `target` covered by the
/// polarity cones of `cols`. The level functional defaults to `(−K, ·)`.
pub fn coverage_fraction(
    s: &SurfaceType,
    target: &Cone,
    cols: &[CylinderCollection],
    level: Option<&[i64]>,
    cap: usize,
) -> Result<BigRational> {
    let pieces: Vec<Cone> = cols.iter().map(|c| c.pol().cloned()).collect::<Result<_>>()?;
    let default_level = anticanonical_functional(s);
    coverage_fraction_of_cones(target, &pieces, level.unwrap_or(&default_level), cap)
}

/// `(−K, ·)` as a functional on coordinate vectors.
pub fn anticanonical_functional(s: &SurfaceType) -> Vec<i64> {
    let d = s.form_diagonal();
    s.anticanonical().coeffs().iter().zip(&d).map(|(x, y)| x * y).collect()
}

/// Fraction of the section of `target` covered by the union of `pieces`
/// (each intersected with `target` first).
pub fn coverage_fraction_of_cones(target: &Cone, pieces: &[Cone], level: &[i64], cap: usize) -> Result<BigRational> {
    if !target.is_pointed() {
        return Err(Error::NotPointed);
    }
    let whole = section_volume_within(target, target, level)?;
    if whole.is_zero() {
        return Err(Error::UnboundedSection);
    }
    let clipped: Vec<Cone> = pieces.iter().map(|p| target.intersect(p)).collect::<Result<_>>()?;
    let covered = union_section_volume_within(target, &clipped, level, cap)?;
    Ok(covered / whole)
}
