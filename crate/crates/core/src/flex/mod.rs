//! Cylinder collections and the verdicts built on them.
//!
//! A collection certifies generic flexibility on a cone `K` of polarizations
//! when it is polar on `K` (the relative interior of `K` lies in the relative
//! interior of the polarity cone), complete on `K` (no ample class in the
//! relative interior of `K` is forbidden) and transversal.

mod campaign;
mod labels;

use std::sync::{Arc, OnceLock};

use crate::cone::Cone;
use crate::cylinder::{Construction, Cylinder};
use crate::error::{Error, Result};
use crate::picard::{sorted_classes, DivisorClass, SurfaceType};

pub use campaign::{
    anticanonical_functional, coverage_fraction, coverage_fraction_of_cones, DEFAULT_CYLINDER_LIMIT,
};
pub use labels::{cone_representative, cone_types, ConeLabel};

#[derive(Clone, Debug)]
pub struct CylinderCollection {
    surface: Arc<SurfaceType>,
    cylinders: Vec<Cylinder>,
    pol: OnceLock<Cone>,
    forb: OnceLock<Cone>,
}

impl CylinderCollection {
    pub fn new(surface: &Arc<SurfaceType>, cylinders: Vec<Cylinder>) -> Result<CylinderCollection> {
        for c in &cylinders {
            if !Arc::ptr_eq(c.surface(), surface) && **c.surface() != **surface {
                return Err(Error::MixedSurfaces);
            }
        }
        Ok(CylinderCollection { surface: Arc::clone(surface), cylinders, pol: OnceLock::new(), forb: OnceLock::new() })
    }

    /// Collection of the given cylinders over their common surface.
    pub fn from_cylinders(cylinders: Vec<Cylinder>) -> Result<CylinderCollection> {
        let Some(first) = cylinders.first() else {
            return Err(Error::BadSubset("an empty collection needs an explicit surface".into()));
        };
        let surface = Arc::clone(first.surface());
        CylinderCollection::new(&surface, cylinders)
    }

    pub fn empty(surface: &Arc<SurfaceType>) -> CylinderCollection {
        CylinderCollection::new(surface, vec![]).expect("no cylinders to mix")
    }

    pub fn surface(&self) -> &Arc<SurfaceType> {
        &self.surface
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn len(&self) -> usize {
        self.cylinders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    /// Intersection of the members' polarity cones; the whole space when empty.
    pub fn pol(&self) -> Result<&Cone> {
        if let Some(c) = self.pol.get() {
            return Ok(c);
        }
        let mut acc = Cone::full(self.surface.rank());
        for u in &self.cylinders {
            acc = acc.intersect(u.pol_cone()?)?;
        }
        Ok(self.pol.get_or_init(|| acc))
    }

    /// Classes removed by every member (movable classes of paired families
    /// excluded).
    pub fn forbidden_classes(&self) -> Option<Vec<DivisorClass>> {
        let mut it = self.cylinders.iter();
        let mut acc = it.next()?.fixed_complement();
        for u in it {
            let fixed = u.fixed_complement();
            acc.retain(|c| fixed.contains(c));
        }
        Some(sorted_classes(acc))
    }

    /// Cone over the forbidden classes; the whole space when empty.
    pub fn forb(&self) -> Result<&Cone> {
        if let Some(c) = self.forb.get() {
            return Ok(c);
        }
        let cone = match self.forbidden_classes() {
            None => Cone::full(self.surface.rank()),
            Some(classes) => self.surface.cone_of(&classes)?,
        };
        Ok(self.forb.get_or_init(|| cone))
    }

    fn check(&self, k: &Cone) -> Result<()> {
        if k.ambient_dim() != self.surface.rank() {
            return Err(Error::DimensionMismatch { expected: self.surface.rank(), got: k.ambient_dim() });
        }
        Ok(())
    }

    /// Polar on every polarization in the relative interior of `k`. Vacuous
    /// for the zero cone.
    pub fn is_polar_on(&self, k: &Cone) -> Result<bool> {
        self.check(k)?;
        if k.is_zero() {
            return Ok(true);
        }
        k.relint_subset(self.pol()?)
    }

    /// Complete on every polarization in the relative interior of `k`: no
    /// ample class of `rel.int(k)` lies in the forbidden cone. Vacuous for
    /// the zero cone.
    ///
    /// With `M = k ∩ Forb`, the set `rel.int(k) ∩ Forb` is empty unless `M`
    /// reaches the relative interior of `k`, and then its relative interior
    /// is `rel.int(M)`; the ample cone is open, so meeting `rel.int(M)` is
    /// the same as meeting `M ∩ rel.int(k)`.
    pub fn is_complete_on(&self, k: &Cone) -> Result<bool> {
        self.check(k)?;
        if k.is_zero() {
            return Ok(true);
        }
        let meet = k.intersect(self.forb()?)?;
        if !k.in_rel_interior(&meet.rel_interior_point())? {
            return Ok(true);
        }
        Ok(!self.surface.relint_meets_ample(&meet)?)
    }

    /// Some member carries a transversality argument, or two lines cylinders
    /// of the same contraction have different centers.
    pub fn is_transversal(&self) -> bool {
        if self.cylinders.iter().any(|u| u.transversal().is_yes()) {
            return true;
        }
        let lines: Vec<(&Cylinder, &DivisorClass)> = self
            .cylinders
            .iter()
            .filter_map(|u| match u.construction() {
                Construction::Lines { center } => Some((u, u.contraction().e(*center).ok()?)),
                _ => None,
            })
            .collect();
        lines.iter().enumerate().any(|(i, (a, ea))| {
            lines[i + 1..].iter().any(|(b, eb)| a.contraction().same_curves(b.contraction()) && ea != eb)
        })
    }

    pub fn is_generically_flexible_on(&self, k: &Cone) -> Result<bool> {
        Ok(self.is_polar_on(k)? && self.is_complete_on(k)? && self.is_transversal())
    }

    /// Members that are polar on all of `k`, in the original order.
    pub fn make_polar_on(&self, k: &Cone) -> Result<CylinderCollection> {
        self.check(k)?;
        let mut keep = Vec::new();
        for u in &self.cylinders {
            if k.is_zero() || k.relint_subset(u.pol_cone()?)? {
                keep.push(u.clone());
            }
        }
        CylinderCollection::new(&self.surface, keep)
    }

    /// Greedily drops members whose removal changes neither the polarity
    /// nor the forbidden cone.
    pub fn reduce(&self) -> Result<CylinderCollection> {
        let pol = self.pol()?.clone();
        let forb = self.forb()?.clone();
        let mut current = self.cylinders.clone();
        let mut i = 0;
        while i < current.len() {
            let mut trial = current.clone();
            trial.remove(i);
            let candidate = CylinderCollection::new(&self.surface, trial.clone())?;
            if *candidate.forb()? == forb && *candidate.pol()? == pol {
                current = trial;
            } else {
                i += 1;
            }
        }
        CylinderCollection::new(&self.surface, current)
    }

    /// Labels whose standard representative passes the polarity test (and
    /// the completeness test when requested).
    pub fn compatible_representatives(&self, require_complete: bool) -> Result<Vec<ConeLabel>> {
        let mut out = Vec::new();
        for label in cone_types(&self.surface) {
            let k = cone_representative(&self.surface, label)?;
            if self.is_polar_on(&k)? && (!require_complete || self.is_complete_on(&k)?) {
                out.push(label);
            }
        }
        Ok(out)
    }

    /// Concatenation of two collections over the same surface.
    pub fn union(&self, other: &CylinderCollection) -> Result<CylinderCollection> {
        let mut all = self.cylinders.clone();
        all.extend(other.cylinders.iter().cloned());
        CylinderCollection::new(&self.surface, all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::Transversality;
    use crate::picard::Contraction;

    fn cubic() -> (Arc<SurfaceType>, Contraction) {
        (Arc::new(SurfaceType::del_pezzo(3).unwrap()), Contraction::standard(6))
    }

    #[test]
    fn cuspidal_collection_on_cubic_surface() {
        let (s, c) = cubic();
        let u = Cylinder::make_cuspcubic(&s, &c, &[3, 4, 5, 6]).unwrap();
        let col = CylinderCollection::new(&s, vec![u]).unwrap();
        let b3 = cone_representative(&s, ConeLabel::B(3)).unwrap();
        assert!(!col.is_polar_on(&b3).unwrap());
        assert!(col.is_complete_on(&b3).unwrap());
        assert!(col.is_transversal());
        assert!(!col.is_generically_flexible_on(&b3).unwrap());
        assert_eq!(col.forb().unwrap(), &s.cone_of(&[s.e(1).unwrap(), s.e(2).unwrap()]).unwrap());
    }

    #[test]
    fn empty_collection_conventions() {
        let (s, _) = cubic();
        let col = CylinderCollection::empty(&s);
        assert_eq!(col.pol().unwrap(), &Cone::full(7));
        assert_eq!(col.forb().unwrap(), &Cone::full(7));
        assert!(!col.is_transversal());
        let k = cone_representative(&s, ConeLabel::B(2)).unwrap();
        assert!(col.is_polar_on(&k).unwrap());
        assert!(!col.is_complete_on(&k).unwrap());
        assert!(col.is_polar_on(&Cone::zero(7)).unwrap());
        assert!(col.is_complete_on(&Cone::zero(7)).unwrap());
        assert_eq!(col.compatible_representatives(false).unwrap().len(), 16);
    }

    #[test]
    fn mixed_surfaces_are_rejected() {
        let (s, c) = cubic();
        let other = Arc::new(SurfaceType::del_pezzo(4).unwrap());
        let u = Cylinder::make_lines(&other, &Contraction::standard(5), 1).unwrap();
        assert_eq!(CylinderCollection::new(&s, vec![u]).unwrap_err(), Error::MixedSurfaces);
        // an equal surface behind a different pointer is fine
        let twin = Arc::new(SurfaceType::del_pezzo(3).unwrap());
        let v = Cylinder::make_lines(&twin, &c, 1).unwrap();
        assert!(CylinderCollection::new(&s, vec![v]).is_ok());
    }

    #[test]
    fn lines_pairs_are_transversal() {
        let (s, c) = cubic();
        let a = Cylinder::make_lines(&s, &c, 1).unwrap();
        let b = Cylinder::make_lines(&s, &c, 2).unwrap();
        assert!(!CylinderCollection::new(&s, vec![a.clone()]).unwrap().is_transversal());
        assert!(!CylinderCollection::new(&s, vec![a.clone(), a.clone()]).unwrap().is_transversal());
        assert!(CylinderCollection::new(&s, vec![a, b]).unwrap().is_transversal());
    }

    #[test]
    fn reduce_drops_duplicates_only() {
        let (s, c) = cubic();
        let a = Cylinder::make_lines(&s, &c, 1).unwrap();
        let b = Cylinder::make_lines(&s, &c, 2).unwrap();
        let col = CylinderCollection::new(&s, vec![a.clone(), a.clone(), b]).unwrap();
        let r = col.reduce().unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.forb().unwrap(), col.forb().unwrap());
        assert_eq!(r.reduce().unwrap().len(), 2);
        let single = CylinderCollection::new(&s, vec![a]).unwrap();
        assert_eq!(single.reduce().unwrap().len(), 1);
    }

    #[test]
    fn make_polar_on_filters() {
        let (s, c) = cubic();
        let u = Cylinder::make_cuspcubic(&s, &c, &[3, 4, 5, 6]).unwrap();
        let v = Cylinder::make_lines(&s, &c, 1).unwrap();
        let col = CylinderCollection::new(&s, vec![v, u]).unwrap();
        let b2 = cone_representative(&s, ConeLabel::B(2)).unwrap();
        let polar = col.make_polar_on(&b2).unwrap();
        assert_eq!(polar.len(), 1);
        assert!(matches!(polar.cylinders()[0].construction(), Construction::CuspCubic { .. }));
        assert_eq!(col.make_polar_on(&Cone::zero(7)).unwrap().len(), 2);
        assert!(CylinderCollection::empty(&s).make_polar_on(&b2).unwrap().is_empty());
    }

    #[test]
    fn generic_flags_are_recorded() {
        let (s, c) = cubic();
        let e = s.exceptional_basis();
        let u = Cylinder::make_generic(&s, &c, &e, &e, &s.line(), Transversality::Unknown).unwrap();
        assert!(!CylinderCollection::new(&s, vec![u]).unwrap().is_transversal());
    }
}
