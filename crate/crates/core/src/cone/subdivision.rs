use super::Cone;
use crate::error::{Error, Result};

impl Cone {
    /// Open subdivision along `r`: the cones `Cone(F, r)` over proper faces
    /// `F` that do not lie in a proper face of `self`. Their relative
    /// interiors partition the relative interior of `self`.
    pub fn open_subdivision(&self, r: &[i64]) -> Result<Vec<Cone>> {
        if !self.contains(r)? {
            return Err(Error::RayNotInCone);
        }
        let mut members = Vec::new();
        for face in self.proper_face_ray_sets()? {
            let mut gens: Vec<Vec<i64>> = face.ones().map(|i| self.rays[i].clone()).collect();
            gens.push(r.to_vec());
            let joined = Cone::from_rays(self.ambient_dim, &gens)?;
            // A convex cone lies in a proper face iff its relative interior point does.
            if self.in_rel_interior(&joined.rel_interior_point())? {
                members.push(joined);
            }
        }
        members.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));
        members.dedup();
        Ok(members)
    }
}
