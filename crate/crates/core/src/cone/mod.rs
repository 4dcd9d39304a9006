//! Exact rational polyhedral cones.
//!
//! A [`Cone`] always carries both representations in canonical form:
//!
//! * generators: an echelon basis of the lineality space plus the primitive
//!   extreme rays of the pointed part (reduced modulo the lineality space);
//! * constraints: an echelon basis of the equations cutting out the linear
//!   span plus one primitive facet normal per facet (reduced modulo the
//!   equations).
//!
//! Two cones are equal as sets iff they are equal as values.

mod dd;
mod faces;
mod subdivision;
mod volume;

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::arith::{dot_i64, dot_sign, integer_row_basis, reduce_modulo};
use crate::error::{Error, Result};

pub use volume::{
    section_volume_within, union_section_volume, union_section_volume_within,
    DEFAULT_INCLUSION_EXCLUSION_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
    equations: Vec<Vec<i64>>,
}

impl Cone {
    /// The cone generated by `rays`.
    pub fn from_rays(ambient_dim: usize, rays: &[Vec<i64>]) -> Result<Cone> {
        Cone::from_generators(ambient_dim, rays, &[])
    }

    /// The cone generated by `rays` plus the linear span of `lines`.
    pub fn from_generators(ambient_dim: usize, rays: &[Vec<i64>], lines: &[Vec<i64>]) -> Result<Cone> {
        check_lengths(ambient_dim, rays)?;
        check_lengths(ambient_dim, lines)?;
        let rays: Vec<Vec<i64>> = rays.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        // Facets of the cone are the extreme rays of its dual.
        let dual = dd::double_description(ambient_dim, &rays, lines)?;
        let (equations, eq_pivots) = integer_row_basis(&dual.lineality, ambient_dim)?;
        let inequalities = canonical_list(&dual.rays, &equations, &eq_pivots)?;
        let primal = dd::double_description(ambient_dim, &inequalities, &equations)?;
        Cone::assemble(ambient_dim, primal, inequalities, equations)
    }

    /// The cone `{x : f(x) >= 0 for all f in functionals}`.
    pub fn from_inequalities(ambient_dim: usize, functionals: &[Vec<i64>]) -> Result<Cone> {
        Cone::from_constraints(ambient_dim, functionals, &[])
    }

    /// The cone `{x : f(x) >= 0, g(x) = 0}`.
    pub fn from_constraints(
        ambient_dim: usize,
        inequalities: &[Vec<i64>],
        equations: &[Vec<i64>],
    ) -> Result<Cone> {
        check_lengths(ambient_dim, inequalities)?;
        check_lengths(ambient_dim, equations)?;
        let primal = dd::double_description(ambient_dim, inequalities, equations)?;
        let dual = dd::double_description(ambient_dim, &primal.rays, &primal.lineality)?;
        let (eqs, eq_pivots) = integer_row_basis(&dual.lineality, ambient_dim)?;
        let ineqs = canonical_list(&dual.rays, &eqs, &eq_pivots)?;
        Cone::assemble(ambient_dim, primal, ineqs, eqs)
    }

    fn assemble(
        ambient_dim: usize,
        primal: dd::Generators,
        inequalities: Vec<Vec<i64>>,
        equations: Vec<Vec<i64>>,
    ) -> Result<Cone> {
        let (lineality, lin_pivots) = integer_row_basis(&primal.lineality, ambient_dim)?;
        let rays = canonical_list(&primal.rays, &lineality, &lin_pivots)?;
        Ok(Cone { ambient_dim, rays, lineality, inequalities, equations })
    }

    pub fn zero(ambient_dim: usize) -> Cone {
        let equations = (0..ambient_dim)
            .map(|i| {
                let mut e = vec![0; ambient_dim];
                e[i] = 1;
                e
            })
            .collect();
        Cone { ambient_dim, rays: vec![], lineality: vec![], inequalities: vec![], equations }
    }

    /// The whole ambient space.
    pub fn full(ambient_dim: usize) -> Cone {
        let lineality = Cone::zero(ambient_dim).equations;
        Cone { ambient_dim, rays: vec![], lineality, inequalities: vec![], equations: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: n });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(self.equations.iter().all(|e| dot_sign(e, v) == Ordering::Equal)
            && self.inequalities.iter().all(|f| dot_sign(f, v) != Ordering::Less))
    }

    pub fn in_rel_interior(&self, v: &[i64]) -> Result<bool> {
        self.check_dim(v.len())?;
        Ok(self.equations.iter().all(|e| dot_sign(e, v) == Ordering::Equal)
            && self.inequalities.iter().all(|f| dot_sign(f, v) == Ordering::Greater))
    }

    /// Sum of the primitive extreme rays; the origin for cones without rays.
    pub fn rel_interior_point(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.ambient_dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn is_subset_of(&self, other: &Cone) -> Result<bool> {
        other.check_dim(self.ambient_dim)?;
        for r in &self.rays {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        for l in &self.lineality {
            let neg: Vec<i64> = l.iter().map(|x| -x).collect();
            if !other.contains(l)? || !other.contains(&neg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_dim(other.ambient_dim)?;
        if self.is_subset_of(other)? {
            return Ok(self.clone());
        }
        if other.is_subset_of(self)? {
            return Ok(other.clone());
        }
        let ineqs: Vec<Vec<i64>> = self.inequalities.iter().chain(&other.inequalities).cloned().collect();
        let eqs: Vec<Vec<i64>> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_constraints(self.ambient_dim, &ineqs, &eqs)
    }

    /// `rel.int(self) ⊆ rel.int(other)`.
    pub fn relint_subset(&self, other: &Cone) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.in_rel_interior(&self.rel_interior_point())?)
    }

    /// `rel.int(self) ∩ other = ∅`.
    ///
    /// The intersection is a convex cone; it avoids the relative interior iff
    /// its own relative interior point does.
    pub fn relint_disjoint(&self, other: &Cone) -> Result<bool> {
        let meet = self.intersect(other)?;
        Ok(!self.in_rel_interior(&meet.rel_interior_point())?)
    }

    /// Whether some point of the relative interior is strictly positive on
    /// every functional.
    ///
    /// Relative interior points are the strictly positive combinations of
    /// the generators (lineality counted with both signs), so this asks for
    /// a strictly feasible `λ` in `{λ ≥ 0, f(Gλ) ≥ 0}`. No constraint of that
    /// cone is an implicit equality exactly when its own interior point
    /// satisfies all of them strictly.
    pub fn relint_meets_open(&self, functionals: &[Vec<i64>]) -> Result<bool> {
        check_lengths(self.ambient_dim, functionals)?;
        let mut gens: Vec<Vec<i64>> = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let k = gens.len();
        if k == 0 {
            return Ok(functionals.is_empty());
        }
        let mut rows: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        for f in functionals {
            let row: Option<Vec<i64>> = gens.iter().map(|g| dot_i64(f, g).to_i64()).collect();
            rows.push(row.ok_or(Error::Overflow)?);
        }
        let lambda = Cone::from_inequalities(k, &rows)?;
        let p = lambda.rel_interior_point();
        Ok(rows.iter().all(|r| dot_sign(r, &p) == Ordering::Greater))
    }

    /// Dual cone with respect to the standard dot product.
    pub fn dual(&self) -> Result<Cone> {
        Cone::from_generators(self.ambient_dim, &self.inequalities, &self.equations)
    }

    /// Dual cone with respect to the diagonal form `diag`:
    /// `{x : Σ diag_i x_i g_i >= 0 for every generator g}`.
    pub fn dual_wrt_diagonal(&self, diag: &[i64]) -> Result<Cone> {
        self.check_dim(diag.len())?;
        let twist = |v: &Vec<i64>| v.iter().zip(diag).map(|(x, d)| x * d).collect::<Vec<i64>>();
        let ineqs: Vec<Vec<i64>> = self.rays.iter().map(twist).collect();
        let eqs: Vec<Vec<i64>> = self.lineality.iter().map(twist).collect();
        Cone::from_constraints(self.ambient_dim, &ineqs, &eqs)
    }

    /// Image under a linear map given on vectors.
    pub fn map<F>(&self, target_dim: usize, f: F) -> Result<Cone>
    where
        F: Fn(&[i64]) -> Vec<i64>,
    {
        let rays: Vec<Vec<i64>> = self.rays.iter().map(|r| f(r)).collect();
        let lines: Vec<Vec<i64>> = self.lineality.iter().map(|l| f(l)).collect();
        Cone::from_generators(target_dim, &rays, &lines)
    }
}

fn check_lengths(n: usize, vs: &[Vec<i64>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch { expected: n, got: v.len() }),
        None => Ok(()),
    }
}

fn canonical_list(vs: &[Vec<i64>], basis: &[Vec<i64>], pivots: &[usize]) -> Result<Vec<Vec<i64>>> {
    let mut out = vs
        .iter()
        .map(|v| reduce_modulo(v, basis, pivots))
        .collect::<Result<Vec<_>>>()?;
    out.retain(|v| v.iter().any(|&x| x != 0));
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrant() -> Cone {
        Cone::from_rays(2, &[vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn quadrant_facets() {
        let q = quadrant();
        assert_eq!(q.inequalities(), &[vec![0, 1], vec![1, 0]]);
        assert!(q.equations().is_empty());
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn line_has_no_facets() {
        let c = Cone::from_rays(2, &[vec![1, 0], vec![-1, 0]]).unwrap();
        assert_eq!(c.equations(), &[vec![0, 1]]);
        assert!(c.inequalities().is_empty());
        assert!(c.rays().is_empty());
        assert_eq!(c.lineality(), &[vec![1, 0]]);
        assert_eq!(c.dim(), 1);
        assert!(!c.is_pointed());
    }

    #[test]
    fn redundant_rays_are_dropped() {
        let c = Cone::from_rays(2, &[vec![2, 0], vec![1, 1], vec![0, 3], vec![0, 0]]).unwrap();
        assert_eq!(c, quadrant());
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn round_trip_through_inequalities() {
        let q = quadrant();
        assert_eq!(Cone::from_inequalities(2, q.inequalities()).unwrap(), q);
        let line = Cone::from_rays(2, &[vec![1, 0], vec![-1, 0]]).unwrap();
        assert_eq!(Cone::from_constraints(2, &[], line.equations()).unwrap(), line);
    }

    #[test]
    fn zero_and_full_cones() {
        assert_eq!(Cone::from_rays(3, &[]).unwrap(), Cone::zero(3));
        assert_eq!(Cone::from_inequalities(3, &[]).unwrap(), Cone::full(3));
        assert_eq!(Cone::zero(3).dual().unwrap(), Cone::full(3));
        assert!(Cone::zero(2).in_rel_interior(&[0, 0]).unwrap());
    }

    #[test]
    fn membership() {
        let q = quadrant();
        assert!(q.in_rel_interior(&[1, 1]).unwrap());
        assert!(q.contains(&[1, 0]).unwrap());
        assert!(!q.in_rel_interior(&[1, 0]).unwrap());
        assert!(q.in_rel_interior(&q.rel_interior_point()).unwrap());
        assert!(matches!(q.contains(&[1, 0, 0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn intersection_with_halfplane() {
        let half = Cone::from_inequalities(2, &[vec![-1, 1]]).unwrap();
        let meet = quadrant().intersect(&half).unwrap();
        assert_eq!(meet, Cone::from_rays(2, &[vec![0, 1], vec![1, 1]]).unwrap());
        assert_eq!(quadrant().intersect(&quadrant()).unwrap(), quadrant());
    }

    #[test]
    fn relint_relations() {
        let q = quadrant();
        let diag = Cone::from_rays(2, &[vec![1, 1]]).unwrap();
        let xray = Cone::from_rays(2, &[vec![1, 0]]).unwrap();
        assert!(diag.relint_subset(&q).unwrap());
        assert!(!xray.relint_subset(&q).unwrap());
        assert!(q.relint_disjoint(&xray).unwrap());
        assert!(!q.relint_disjoint(&diag).unwrap());
    }

    #[test]
    fn twisted_dual() {
        // Hyperbolic form diag(1,-1): dual of the ray (1,0) is the halfplane x >= 0.
        let c = Cone::from_rays(2, &[vec![1, 0]]).unwrap();
        let d = c.dual_wrt_diagonal(&[1, -1]).unwrap();
        assert_eq!(d, Cone::from_inequalities(2, &[vec![1, 0]]).unwrap());
    }

    #[test]
    fn strict_feasibility_on_relative_interiors() {
        let quadrant = Cone::from_rays(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        // x > y meets the open quadrant; x > 0 on the ray (0, 1) does not
        assert!(quadrant.relint_meets_open(&[vec![1, -1]]).unwrap());
        let ray = Cone::from_rays(2, &[vec![0, 1]]).unwrap();
        assert!(!ray.relint_meets_open(&[vec![1, 0]]).unwrap());
        assert!(ray.relint_meets_open(&[vec![1, 1]]).unwrap());
        // a line meets any open half-plane not containing it in its boundary
        let line = Cone::from_generators(2, &[], &[vec![1, 1]]).unwrap();
        assert!(line.relint_meets_open(&[vec![1, 0]]).unwrap());
        assert!(!line.relint_meets_open(&[vec![1, -1]]).unwrap());
        assert!(!Cone::zero(2).relint_meets_open(&[vec![1, 0]]).unwrap());
    }
}
