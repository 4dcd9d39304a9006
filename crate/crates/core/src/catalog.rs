//! Ready-made collections for the two non-toric weak del Pezzo surfaces of
//! degree 6.
//!
//! Both use pencils of lines through a moving point `p`. The lines through
//! `p` and a blown-up point move with `p`, so they enter the support but not
//! the complement recorded for the family.

use std::sync::Arc;

use crate::cylinder::{Cylinder, Transversality};
use crate::error::Result;
use crate::flex::CylinderCollection;
use crate::picard::{Contraction, DegenerationData, DivisorClass, SurfaceType};

/// Three collinear points blown up.
pub fn collinear_sextic_surface() -> Result<Arc<SurfaceType>> {
    let d = DegenerationData { collinear_triples: vec![[1, 2, 3]], ..Default::default() };
    Ok(Arc::new(SurfaceType::new(6, d)?))
}

/// Point 2 infinitely near point 1.
pub fn infinitely_near_sextic_surface() -> Result<Arc<SurfaceType>> {
    let d = DegenerationData { infinitely_near: vec![(2, 1)], ..Default::default() };
    Ok(Arc::new(SurfaceType::new(6, d)?))
}

/// Lines through a point off the line of `p_1, p_2, p_3`: the complement of
/// the three lines through `p` and the `p_i` has fibers of class `L`.
pub fn collinear_sextic_collection(s: &Arc<SurfaceType>) -> Result<CylinderCollection> {
    let e = s.exceptional_basis();
    let mut support = e.clone();
    support.extend(e.iter().map(|x| &s.line() - x));
    let u = Cylinder::make_generic(s, &Contraction::standard(s.m()), &e, &support, &s.line(), Transversality::Yes)?;
    CylinderCollection::new(s, vec![u])
}

/// Two families of line pencils, one for the standard contraction and one
/// for the contraction of `L−E2−E3, L−E1−E3, L−E1−E2`.
///
/// For a contraction with `(e_1, e_2)` the infinitely-near pair, the moving
/// point lies on the line `ℓ − e_1 − e_2` through the pair. Removing that
/// line leaves an affine plane containing only the third point, and the
/// pencil through `p` is a cylinder once the line through `p` and the third
/// point (and `e_3`) is removed as well.
pub fn infinitely_near_sextic_collection(s: &Arc<SurfaceType>) -> Result<CylinderCollection> {
    let p = |t: &str| DivisorClass::parse(t, s.m());
    let second = Contraction::new(vec![p("L-E2-E3")?, p("L-E1-E3")?, p("L-E1-E2")?])?;
    let mut members = Vec::new();
    for c in [Contraction::standard(s.m()), second] {
        let local = |x: Vec<i64>| c.to_standard(&DivisorClass::new(x));
        let fixed = vec![
            local(vec![1, -1, -1, 0])?, // the line through the pair
            local(vec![0, 1, -1, 0])?,  // the (-2)-curve
            local(vec![0, 0, 1, 0])?,
            local(vec![0, 0, 0, 1])?,
        ];
        let moving = local(vec![1, 0, 0, -1])?;
        let mut support = fixed.clone();
        support.push(moving);
        let fiber = c.line_class().clone();
        members.push(Cylinder::make_generic(s, &c, &fixed, &support, &fiber, Transversality::Yes)?);
    }
    CylinderCollection::new(s, members)
}
