use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::Cone;
use crate::arith::dot_sign;
use crate::error::{Error, Result};

impl Cone {
    /// Rays of `self` lying on each facet, one bitset per inequality.
    pub(crate) fn facet_incidence(&self) -> Vec<FixedBitSet> {
        self.inequalities
            .iter()
            .map(|f| {
                let mut set = FixedBitSet::with_capacity(self.rays.len());
                for (i, r) in self.rays.iter().enumerate() {
                    if dot_sign(f, r).is_eq() {
                        set.insert(i);
                    }
                }
                set
            })
            .collect()
    }

    /// Ray-index sets of all proper faces, including the empty set of the
    /// zero face. Faces are closed under intersection with facets, so a
    /// breadth-first closure starting from the facets reaches all of them.
    pub(crate) fn proper_face_ray_sets(&self) -> Result<Vec<FixedBitSet>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        if self.is_zero() {
            return Ok(vec![]);
        }
        let incidence = self.facet_incidence();
        let key = |s: &FixedBitSet| s.ones().collect::<Vec<usize>>();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
        let mut out = Vec::new();
        for f in &incidence {
            if seen.insert(key(f)) {
                queue.push_back(f.clone());
            }
        }
        while let Some(face) = queue.pop_front() {
            for f in &incidence {
                let mut sub = face.clone();
                sub.intersect_with(f);
                if sub != face && seen.insert(key(&sub)) {
                    queue.push_back(sub);
                }
            }
            out.push(face);
        }
        Ok(out)
    }

    /// All proper faces, from `{0}` upwards, in canonical order.
    pub fn proper_faces(&self) -> Result<Vec<Cone>> {
        let mut faces = self
            .proper_face_ray_sets()?
            .into_iter()
            .map(|s| {
                let rays: Vec<Vec<i64>> = s.ones().map(|i| self.rays[i].clone()).collect();
                Cone::from_rays(self.ambient_dim, &rays)
            })
            .collect::<Result<Vec<_>>>()?;
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));
        Ok(faces)
    }
}
