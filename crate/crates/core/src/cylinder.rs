//! Cylinders on (weak) del Pezzo surfaces and the factories for the known
//! constructions.
//!
//! Every factory works in the coordinates `(ℓ, e_1, …, e_m)` of a chosen
//! contraction and stores the resulting classes in the standard basis. The
//! fiber bubble class stays in contraction coordinates, since it may mention
//! a moving base point that has no exceptional curve.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::picard::{sorted_classes, BubbleClass, Contraction, DivisorClass, SurfaceType};

/// Label of the moving base point used in fiber bubble classes.
pub const MOVING_POINT: i64 = -1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    /// Lines through the point blown up to `e_center`.
    Lines { center: usize },
    /// Conics tangent to a fixed conic at a moving point.
    Tangent { conic: Vec<usize>, tangent: Vec<usize>, groups: Vec<Vec<usize>> },
    /// Pencil spanned by a cuspidal anticanonical curve and a conic through four points.
    CuspCubic { four: [usize; 4] },
    Generic,
}

impl Construction {
    pub fn kind(&self) -> ConstructionKind {
        match self {
            Construction::Lines { .. } => ConstructionKind::Lines,
            Construction::Tangent { .. } => ConstructionKind::Tangent,
            Construction::CuspCubic { .. } => ConstructionKind::CuspCubic,
            Construction::Generic => ConstructionKind::Generic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionKind {
    Lines,
    Tangent,
    CuspCubic,
    Generic,
}

impl ConstructionKind {
    pub fn tag(self) -> &'static str {
        match self {
            ConstructionKind::Lines => "lines",
            ConstructionKind::Tangent => "tangent",
            ConstructionKind::CuspCubic => "cuspcubic",
            ConstructionKind::Generic => "generic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<ConstructionKind> {
        match tag {
            "lines" => Some(ConstructionKind::Lines),
            "tangent" => Some(ConstructionKind::Tangent),
            "cuspcubic" => Some(ConstructionKind::CuspCubic),
            "generic" => Some(ConstructionKind::Generic),
            _ => None,
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Whether a cylinder comes with a transversality argument. Recorded from
/// the construction, never inferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transversality {
    Yes,
    No,
    Unknown,
}

impl Transversality {
    pub fn is_yes(self) -> bool {
        self == Transversality::Yes
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Transversality::Yes => "true",
            Transversality::No => "false",
            Transversality::Unknown => "unknown",
        }
    }
}

impl From<bool> for Transversality {
    fn from(b: bool) -> Self {
        if b {
            Transversality::Yes
        } else {
            Transversality::No
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cylinder {
    surface: Arc<SurfaceType>,
    contraction: Contraction,
    construction: Construction,
    complement: Vec<DivisorClass>,
    support: Vec<DivisorClass>,
    movable: Vec<DivisorClass>,
    fiber: DivisorClass,
    fiber_bubble: BubbleClass,
    transversal: Transversality,
    pol: OnceLock<Cone>,
}

/// Identity of a cylinder for deduplication: classes in the standard basis.
pub type Signature = (Vec<DivisorClass>, Vec<DivisorClass>, DivisorClass);

impl Cylinder {
    pub fn surface(&self) -> &Arc<SurfaceType> {
        &self.surface
    }

    pub fn contraction(&self) -> &Contraction {
        &self.contraction
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Classes of the curves removed from the surface, canonical order.
    pub fn complement(&self) -> &[DivisorClass] {
        &self.complement
    }

    /// Classes spanning the polarity cone, canonical order.
    pub fn support(&self) -> &[DivisorClass] {
        &self.support
    }

    /// Complement classes that move with the cylinder inside its paired
    /// family; they are not missed by the family as a whole.
    pub fn movable(&self) -> &[DivisorClass] {
        &self.movable
    }

    /// Complement classes that every member of the family removes.
    pub fn fixed_complement(&self) -> Vec<DivisorClass> {
        self.complement.iter().filter(|c| !self.movable.contains(c)).cloned().collect()
    }

    pub fn fiber(&self) -> &DivisorClass {
        &self.fiber
    }

    pub fn fiber_bubble(&self) -> &BubbleClass {
        &self.fiber_bubble
    }

    pub fn transversal(&self) -> Transversality {
        self.transversal
    }

    pub fn signature(&self) -> Signature {
        (self.complement.clone(), self.support.clone(), self.fiber.clone())
    }

    /// `Pol(U)`, the cone spanned by the support classes.
    pub fn pol_cone(&self) -> Result<&Cone> {
        if let Some(c) = self.pol.get() {
            return Ok(c);
        }
        let cone = self.surface.cone_of(&self.support)?;
        Ok(self.pol.get_or_init(|| cone))
    }

    fn build(
        surface: &Arc<SurfaceType>,
        contraction: &Contraction,
        construction: Construction,
        local: Local,
        transversal: Transversality,
    ) -> Result<Cylinder> {
        let std = |v: Vec<DivisorClass>| -> Result<Vec<DivisorClass>> {
            Ok(sorted_classes(v.iter().map(|d| contraction.to_standard(d)).collect::<Result<Vec<_>>>()?))
        };
        let complement = std(local.complement)?;
        let movable = std(local.movable)?;
        Ok(Cylinder {
            surface: Arc::clone(surface),
            contraction: contraction.clone(),
            construction,
            support: complement.clone(),
            complement,
            movable,
            fiber: contraction.to_standard(&local.fiber_bubble.resolve_declared())?,
            fiber_bubble: local.fiber_bubble,
            transversal,
            pol: OnceLock::new(),
        })
    }

    /// Lines through the point of `e_center`.
    ///
    /// The complement consists of all `e_j` and the lines `ℓ − e_center − e_j`
    /// through the other points; the fibers have class `ℓ − e_center`.
    pub fn make_lines(surface: &Arc<SurfaceType>, contraction: &Contraction, center: usize) -> Result<Cylinder> {
        let m = check_contraction(surface, contraction)?;
        check_index(center, m)?;
        let l = DivisorClass::line(m);
        let e = |j: usize| DivisorClass::exceptional(m, j).expect("index in range");
        let mut complement: Vec<DivisorClass> = (1..=m).map(e).collect();
        for j in (1..=m).filter(|&j| j != center) {
            complement.push(&(&l - &e(center)) - &e(j));
        }
        let local = Local {
            complement,
            movable: vec![],
            fiber_bubble: BubbleClass::new(l).with(center as i64, -1),
        };
        Cylinder::build(surface, contraction, Construction::Lines { center }, local, Transversality::No)
    }

    /// Conics tangent to a fixed conic `Q` through `conic` at a moving point,
    /// with the tangent line through `tangent`.
    ///
    /// Points not mentioned in any set form singleton groups. Each group `g`
    /// contributes the member `2ℓ − Σ_g e` of the pencil; the number of
    /// conditions imposed on the pencil may not exceed 5.
    pub fn make_tangent(
        surface: &Arc<SurfaceType>,
        contraction: &Contraction,
        conic: &[usize],
        tangent: &[usize],
        groups: &[Vec<usize>],
    ) -> Result<Cylinder> {
        let m = check_contraction(surface, contraction)?;
        let mut seen = BTreeSet::new();
        for &p in conic.iter().chain(tangent).chain(groups.iter().flatten()) {
            check_index(p, m)?;
            if !seen.insert(p) {
                return Err(Error::OverlappingSets(p));
            }
        }
        if groups.iter().any(|g| g.is_empty()) {
            return Err(Error::BadSubset("empty fiber group".into()));
        }
        let conditions = conic.len().saturating_sub(1)
            + tangent.len()
            + groups.iter().map(|g| g.len() - 1).sum::<usize>();
        if conditions > 5 {
            return Err(Error::TooManyConditions { count: conditions });
        }
        let mut all_groups: Vec<Vec<usize>> = groups.iter().map(|g| sorted_points(g)).collect();
        all_groups.extend((1..=m).filter(|p| !seen.contains(p)).map(|p| vec![p]));

        let l = DivisorClass::line(m);
        let through = |deg: i64, pts: &[usize]| {
            let mut c = vec![0; m + 1];
            c[0] = deg;
            for &p in pts {
                c[p] -= 1;
            }
            DivisorClass::new(c)
        };
        let q = through(2, conic);
        let tangent_line = through(1, tangent);
        let mut complement = vec![q, tangent_line.clone()];
        let mut movable = vec![tangent_line];
        for g in &all_groups {
            let member = through(2, g);
            complement.push(member.clone());
            movable.push(member);
        }
        complement.extend((1..=m).map(|j| DivisorClass::exceptional(m, j).expect("index in range")));
        let local = Local { complement, movable, fiber_bubble: BubbleClass::new(2 * &l).with(MOVING_POINT, -1) };
        let construction = Construction::Tangent {
            conic: sorted_points(conic),
            tangent: sorted_points(tangent),
            groups: all_groups,
        };
        Cylinder::build(surface, contraction, construction, local, Transversality::Yes)
    }

    /// Pencil spanned by a cuspidal anticanonical curve and the conic
    /// through the points `four`, for degrees 2 to 5.
    pub fn make_cuspcubic(surface: &Arc<SurfaceType>, contraction: &Contraction, four: &[usize]) -> Result<Cylinder> {
        let m = check_contraction(surface, contraction)?;
        if !(2..=5).contains(&surface.degree()) {
            return Err(Error::WrongDegree { expected: "2..=5", got: surface.degree() as i64 });
        }
        if surface.degree() == 2 && !surface.flags().admits_cuspidal_anticanonical {
            return Err(Error::NoCuspidalCurve);
        }
        if four.len() != 4 {
            return Err(Error::BadSubset(format!("expected 4 points, got {}", four.len())));
        }
        for &p in four {
            check_index(p, m)?;
        }
        let pts = sorted_points(four);
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadSubset(format!("repeated point in {four:?}")));
        }
        let four: [usize; 4] = [pts[0], pts[1], pts[2], pts[3]];

        let l = DivisorClass::line(m);
        let e = |j: usize| DivisorClass::exceptional(m, j).expect("index in range");
        let k = DivisorClass::anticanonical(m);
        let mut conic = 2 * &l;
        for &i in &four {
            conic = &conic - &e(i);
        }
        let mut movable = vec![k, conic];
        movable.extend(four.iter().map(|&i| &l - &e(i)));
        let mut complement = movable.clone();
        complement.extend((1..=m).filter(|j| !four.contains(j)).map(e));
        let mut bubble = BubbleClass::new(6 * &l).with(MOVING_POINT, -2);
        for &i in &four {
            bubble = bubble.with(i as i64, -2);
        }
        let local = Local { complement, movable, fiber_bubble: bubble };
        Cylinder::build(surface, contraction, Construction::CuspCubic { four }, local, Transversality::Yes)
    }

    /// A cylinder given directly by its classes, in the standard basis.
    pub fn make_generic(
        surface: &Arc<SurfaceType>,
        contraction: &Contraction,
        complement: &[DivisorClass],
        support: &[DivisorClass],
        fiber: &DivisorClass,
        transversal: Transversality,
    ) -> Result<Cylinder> {
        check_contraction(surface, contraction)?;
        for d in complement.iter().chain(support).chain([fiber]) {
            surface.check_class(d)?;
        }
        if let Some(missing) = complement.iter().find(|c| !support.contains(c)) {
            return Err(Error::SupportMismatch(missing.to_string()));
        }
        Ok(Cylinder {
            surface: Arc::clone(surface),
            contraction: contraction.clone(),
            construction: Construction::Generic,
            complement: sorted_classes(complement.iter().cloned()),
            support: sorted_classes(support.iter().cloned()),
            movable: vec![],
            fiber: fiber.clone(),
            fiber_bubble: BubbleClass::new(contraction.relabel(fiber)?),
            transversal,
            pol: OnceLock::new(),
        })
    }
}

/// Classes of one construction in contraction coordinates.
struct Local {
    complement: Vec<DivisorClass>,
    movable: Vec<DivisorClass>,
    fiber_bubble: BubbleClass,
}

fn check_contraction(surface: &SurfaceType, contraction: &Contraction) -> Result<usize> {
    if contraction.m() != surface.m() {
        return Err(Error::LengthMismatch { expected: surface.rank(), got: contraction.m() + 1 });
    }
    Ok(surface.m())
}

fn check_index(i: usize, m: usize) -> Result<()> {
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    Ok(())
}

fn sorted_points(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    v.sort_unstable();
    v
}
