//! Volumes of hyperplane sections of cones.
//!
//! The section of a pointed cone `C` by `{λ = 1}` is a polytope. Its volume
//! is reported in a fixed normalization: for a simplicial cone with rays
//! `v_1..v_k`, `|det(v_1..v_k)| / Π λ(v_i)`, the determinant taken in a set
//! of coordinates on which the projection of the span is injective. The
//! normalization differs from Euclidean volume by a factor depending only on
//! the span and `λ`, so ratios within one span are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Cone;
use crate::arith::{det, dot_i64, integer_row_basis, rat};
use crate::error::{Error, Result};

pub const DEFAULT_INCLUSION_EXCLUSION_CAP: usize = 1 << 12;

/// Coordinates in which sections of cones spanning a common subspace are measured.
struct Frame {
    coords: Vec<usize>,
}

impl Frame {
    fn spanned_by(ambient_dim: usize, cones: &[&Cone]) -> Result<Frame> {
        let gens: Vec<Vec<i64>> = cones
            .iter()
            .flat_map(|c| c.rays.iter().chain(&c.lineality))
            .cloned()
            .collect();
        let (_, coords) = integer_row_basis(&gens, ambient_dim)?;
        Ok(Frame { coords })
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn level_values(cone: &Cone, level: &[i64]) -> Result<Vec<BigInt>> {
    cone.check_dim(level.len())?;
    if !cone.is_pointed() {
        return Err(Error::UnboundedSection);
    }
    cone.rays
        .iter()
        .map(|r| {
            let v = dot_i64(level, r);
            if v.is_positive() {
                Ok(v)
            } else {
                Err(Error::UnboundedSection)
            }
        })
        .collect()
}

/// Pulling triangulation using only the cone's own rays.
fn triangulate(cone: &Cone) -> Result<Vec<Vec<Vec<i64>>>> {
    let k = cone.dim();
    if k == 0 {
        return Ok(vec![]);
    }
    if cone.rays.len() == k {
        return Ok(vec![cone.rays.clone()]);
    }
    let apex = &cone.rays[0];
    let incidence = cone.facet_incidence();
    let mut out = Vec::new();
    for (f, on_facet) in cone.inequalities.iter().zip(&incidence) {
        if dot_i64(f, apex).is_zero() {
            continue;
        }
        let rays: Vec<Vec<i64>> = on_facet.ones().map(|i| cone.rays[i].clone()).collect();
        let facet = Cone::from_rays(cone.ambient_dim, &rays)?;
        for mut simplex in triangulate(&facet)? {
            simplex.insert(0, apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}

fn volume_in_frame(cone: &Cone, level: &[i64], frame: &Frame) -> Result<BigRational> {
    level_values(cone, level)?;
    if cone.dim() < frame.dim() || frame.dim() == 0 {
        return Ok(BigRational::zero());
    }
    let mut total = BigRational::zero();
    for simplex in triangulate(cone)? {
        let matrix: Vec<Vec<BigRational>> = simplex
            .iter()
            .map(|r| frame.coords.iter().map(|&c| rat(r[c])).collect())
            .collect();
        let mut denom = BigInt::from(1);
        for r in &simplex {
            denom *= dot_i64(level, r);
        }
        total += det(matrix).abs() / BigRational::from_integer(denom);
    }
    Ok(total)
}

impl Cone {
    /// Normalized volume of the section `{x ∈ self : level(x) = 1}`.
    pub fn section_volume(&self, level: &[i64]) -> Result<BigRational> {
        let frame = Frame::spanned_by(self.ambient_dim, &[self])?;
        volume_in_frame(self, level, &frame)
    }
}

/// Volume of the union of the sections, by inclusion–exclusion over
/// intersections, measured in the joint span of `cones`. Members of lower
/// dimension than the joint span contribute nothing.
pub fn union_section_volume(cones: &[Cone], level: &[i64], cap: usize) -> Result<BigRational> {
    let Some(first) = cones.first() else {
        return Ok(BigRational::zero());
    };
    let refs: Vec<&Cone> = cones.iter().collect();
    let frame = Frame::spanned_by(first.ambient_dim, &refs)?;
    union_in_frame(cones, level, cap, &frame)
}

/// Like [`union_section_volume`], measured in the span of `reference`
/// (typically a target cone containing all of `cones`).
pub fn union_section_volume_within(
    reference: &Cone,
    cones: &[Cone],
    level: &[i64],
    cap: usize,
) -> Result<BigRational> {
    let frame = Frame::spanned_by(reference.ambient_dim, &[reference])?;
    union_in_frame(cones, level, cap, &frame)
}

/// Section volume of `cone` measured in the span of `reference`.
pub fn section_volume_within(reference: &Cone, cone: &Cone, level: &[i64]) -> Result<BigRational> {
    let frame = Frame::spanned_by(reference.ambient_dim, &[reference])?;
    volume_in_frame(cone, level, &frame)
}

fn union_in_frame(cones: &[Cone], level: &[i64], cap: usize, frame: &Frame) -> Result<BigRational> {
    for c in cones {
        level_values(c, level)?;
    }
    let mut state = Walk { cones, level, cap, frame, terms: 0, total: BigRational::zero() };
    state.descend(0, None, true)?;
    Ok(state.total)
}

struct Walk<'a> {
    cones: &'a [Cone],
    level: &'a [i64],
    cap: usize,
    frame: &'a Frame,
    terms: usize,
    total: BigRational,
}

impl Walk<'_> {
    fn descend(&mut self, start: usize, meet: Option<&Cone>, add: bool) -> Result<()> {
        for i in start..self.cones.len() {
            self.terms += 1;
            if self.terms > self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            let next = match meet {
                Some(m) => m.intersect(&self.cones[i])?,
                None => self.cones[i].clone(),
            };
            // Supersets of a negligible intersection are negligible too.
            if next.dim() < self.frame.dim() {
                continue;
            }
            let v = volume_in_frame(&next, self.level, self.frame)?;
            if add {
                self.total += v;
            } else {
                self.total -= v;
            }
            self.descend(i + 1, Some(&next), !add)?;
        }
        Ok(())
    }
}
