use std::collections::{BTreeMap, BTreeSet};

use super::class::{exceptional_vectors, DivisorClass};
use crate::cone::Cone;
use crate::error::{Error, Result};

/// Special position of the blown-up points. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegenerationData {
    pub collinear_triples: Vec<[usize; 3]>,
    /// `(child, parent)`: the child lies on the exceptional curve over the parent.
    pub infinitely_near: Vec<(usize, usize)>,
    pub conic_sixes: Vec<[usize; 6]>,
    /// `(node, others)`: a cuspidal cubic through all eight points, singular at `node`.
    pub cusp_cubics: Vec<(usize, [usize; 7])>,
}

impl DegenerationData {
    pub fn is_empty(&self) -> bool {
        self.collinear_triples.is_empty()
            && self.infinitely_near.is_empty()
            && self.conic_sixes.is_empty()
            && self.cusp_cubics.is_empty()
    }

    /// Sorted subsets and sorted lists, so that equal configurations compare equal.
    pub fn canonicalized(&self) -> DegenerationData {
        let mut out = self.clone();
        for t in &mut out.collinear_triples {
            t.sort_unstable();
        }
        for s in &mut out.conic_sixes {
            s.sort_unstable();
        }
        for (_, s) in &mut out.cusp_cubics {
            s.sort_unstable();
        }
        out.collinear_triples.sort_unstable();
        out.infinitely_near.sort_unstable();
        out.conic_sixes.sort_unstable();
        out.cusp_cubics.sort_unstable();
        out
    }

    /// The (-2)-classes induced by the declared degenerations, in declaration order.
    fn declared_classes(&self, m: usize) -> Vec<(String, DivisorClass)> {
        let mut out = Vec::new();
        for t in &self.collinear_triples {
            out.push((format!("collinear triple {t:?}"), curve_class(m, 1, &[], t)));
        }
        for &(child, parent) in &self.infinitely_near {
            let mut c = vec![0; m + 1];
            c[parent] = 1;
            c[child] = -1;
            out.push((format!("infinitely near pair ({child}, {parent})"), DivisorClass::new(c)));
        }
        for s in &self.conic_sixes {
            out.push((format!("conic six {s:?}"), curve_class(m, 2, &[], s)));
        }
        for (node, s) in &self.cusp_cubics {
            out.push((format!("cusp cubic ({node}, {s:?})"), curve_class(m, 3, &[*node], s)));
        }
        out
    }

    fn validate(&self, m: usize) -> Result<()> {
        let check = |i: usize| {
            if i == 0 || i > m {
                Err(Error::IndexOutOfRange { index: i, max: m })
            } else {
                Ok(())
            }
        };
        let distinct = |what: &str, pts: &[usize]| -> Result<()> {
            for &p in pts {
                check(p)?;
            }
            let set: BTreeSet<_> = pts.iter().collect();
            if set.len() != pts.len() {
                return Err(Error::config(format!("{what} {pts:?} repeats a point")));
            }
            Ok(())
        };
        for t in &self.collinear_triples {
            distinct("collinear triple", t)?;
        }
        for s in &self.conic_sixes {
            distinct("conic six", s)?;
        }
        for (node, s) in &self.cusp_cubics {
            if m != 8 {
                return Err(Error::config("cuspidal cubics through eight points need degree 1"));
            }
            let mut all = vec![*node];
            all.extend_from_slice(s);
            distinct("cusp cubic", &all)?;
        }

        let mut parent_of = BTreeMap::new();
        let mut child_of = BTreeMap::new();
        for &(child, parent) in &self.infinitely_near {
            check(child)?;
            check(parent)?;
            if child == parent {
                return Err(Error::config(format!("point {child} cannot be infinitely near itself")));
            }
            if parent_of.insert(child, parent).is_some() {
                return Err(Error::config(format!("point {child} is infinitely near two points")));
            }
            if child_of.insert(parent, child).is_some() {
                return Err(Error::config(format!(
                    "point {parent} has more than one immediate infinitely near point"
                )));
            }
        }
        for &start in parent_of.keys() {
            let mut seen = BTreeSet::from([start]);
            let mut cur = start;
            while let Some(&p) = parent_of.get(&cur) {
                if !seen.insert(p) {
                    return Err(Error::config("infinitely near pairs form a cycle"));
                }
                cur = p;
            }
        }

        let lines: Vec<BTreeSet<usize>> = self.collinear_triples.iter().map(|t| t.iter().copied().collect()).collect();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if a.intersection(b).count() >= 2 {
                    return Err(Error::config("four points lie on a line"));
                }
            }
        }
        let conics: Vec<BTreeSet<usize>> = self.conic_sixes.iter().map(|s| s.iter().copied().collect()).collect();
        for (i, a) in conics.iter().enumerate() {
            for b in &conics[i + 1..] {
                if a.intersection(b).count() >= 5 {
                    return Err(Error::config("seven points lie on a conic"));
                }
            }
        }

        let declared = self.declared_classes(m);
        for (i, (na, a)) in declared.iter().enumerate() {
            for (nb, b) in &declared[i + 1..] {
                let p = a.pairing(b)?;
                if !(0..=1).contains(&p) {
                    return Err(Error::config(format!(
                        "(-2)-curves of {na} and {nb} meet with multiplicity {p} (allowed: 0 or 1)"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn curve_class(m: usize, degree: i64, doubles: &[usize], simple: &[usize]) -> DivisorClass {
    let mut c = vec![0; m + 1];
    c[0] = degree;
    for &i in doubles {
        c[i] -= 2;
    }
    for &i in simple {
        c[i] -= 1;
    }
    DivisorClass::new(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceFlags {
    /// Degree 2 only: whether some anticanonical curve is cuspidal. Holds for
    /// general surfaces, which is why it defaults to `true`.
    pub admits_cuspidal_anticanonical: bool,
}

impl Default for SurfaceFlags {
    fn default() -> Self {
        SurfaceFlags { admits_cuspidal_anticanonical: true }
    }
}

/// The combinatorial type of a (weak) del Pezzo surface of degree `1..=7`,
/// viewed as the plane blown up at `m = 9 − degree` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceType {
    degree: usize,
    degenerations: DegenerationData,
    flags: SurfaceFlags,
    minus_one: Vec<DivisorClass>,
    minus_two: Vec<DivisorClass>,
}

impl SurfaceType {
    pub fn new(degree: i64, degenerations: DegenerationData) -> Result<SurfaceType> {
        SurfaceType::with_flags(degree, degenerations, SurfaceFlags::default())
    }

    pub fn del_pezzo(degree: i64) -> Result<SurfaceType> {
        SurfaceType::new(degree, DegenerationData::default())
    }

    pub fn with_flags(degree: i64, degenerations: DegenerationData, flags: SurfaceFlags) -> Result<SurfaceType> {
        let (degree, m) = check_degree(degree)?;
        degenerations.validate(m)?;
        let degenerations = degenerations.canonicalized();
        let minus_two = sorted_classes(degenerations.declared_classes(m).into_iter().map(|(_, c)| c));
        let minus_one = exceptional_vectors(m)
            .into_iter()
            .filter(|d| minus_two.iter().all(|f| d.pairing(f).map(|p| p >= 0).unwrap_or(false)))
            .collect();
        Ok(SurfaceType { degree, degenerations, flags, minus_one, minus_two })
    }

    /// Rebuilds a surface from previously computed curve tables.
    ///
    /// The degenerations are validated as in [`SurfaceType::new`]; the tables
    /// must be canonically ordered and satisfy the defining equations, and the
    /// (-2)-table must be the declared one.
    pub fn from_tables(
        degree: i64,
        degenerations: DegenerationData,
        flags: SurfaceFlags,
        minus_one: Vec<DivisorClass>,
        minus_two: Vec<DivisorClass>,
    ) -> Result<SurfaceType> {
        let (degree, m) = check_degree(degree)?;
        degenerations.validate(m)?;
        let degenerations = degenerations.canonicalized();
        let declared = sorted_classes(degenerations.declared_classes(m).into_iter().map(|(_, c)| c));
        if declared != minus_two {
            return Err(Error::config("cached (-2)-curves do not match the degenerations"));
        }
        let sorted = sorted_classes(minus_one.iter().cloned());
        let ok = sorted == minus_one
            && minus_one.iter().all(|d| {
                d.m() == m
                    && d.self_intersection() == -1
                    && d.anticanonical_degree() == 1
                    && minus_two.iter().all(|f| d.pairing(f).map(|p| p >= 0).unwrap_or(false))
            });
        if !ok || (m >= 1 && minus_one.is_empty()) {
            return Err(Error::config("cached (-1)-curves are inconsistent"));
        }
        Ok(SurfaceType { degree, degenerations, flags, minus_one, minus_two })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of blown-up points.
    pub fn m(&self) -> usize {
        9 - self.degree
    }

    /// Ambient dimension of the Picard lattice, `m + 1`.
    pub fn rank(&self) -> usize {
        self.m() + 1
    }

    pub fn degenerations(&self) -> &DegenerationData {
        &self.degenerations
    }

    pub fn flags(&self) -> SurfaceFlags {
        self.flags
    }

    pub fn is_weak(&self) -> bool {
        !self.minus_two.is_empty()
    }

    pub fn minus_one_curves(&self) -> &[DivisorClass] {
        &self.minus_one
    }

    pub fn minus_two_curves(&self) -> &[DivisorClass] {
        &self.minus_two
    }

    /// The canonical class `K`.
    pub fn canonical_class(&self) -> DivisorClass {
        -DivisorClass::anticanonical(self.m())
    }

    /// `−K = 3L − ΣE_i`.
    pub fn anticanonical(&self) -> DivisorClass {
        DivisorClass::anticanonical(self.m())
    }

    pub fn line(&self) -> DivisorClass {
        DivisorClass::line(self.m())
    }

    /// `E_i`, `i` in `1..=m`.
    pub fn e(&self, i: usize) -> Result<DivisorClass> {
        DivisorClass::exceptional(self.m(), i)
    }

    /// `E_1, …, E_m`.
    pub fn exceptional_basis(&self) -> Vec<DivisorClass> {
        (1..=self.m()).map(|i| DivisorClass::exceptional(self.m(), i).expect("index in range")).collect()
    }

    /// The diagonal of the intersection form.
    pub fn form_diagonal(&self) -> Vec<i64> {
        let mut d = vec![-1; self.rank()];
        d[0] = 1;
        d
    }

    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check_class(a)?;
        self.check_class(b)?;
        a.pairing(b)
    }

    pub fn check_class(&self, d: &DivisorClass) -> Result<()> {
        if d.coeffs().len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), got: d.coeffs().len() });
        }
        Ok(())
    }

    /// All negative curves: (-1)-curves followed by (-2)-curves.
    pub fn negative_curves(&self) -> impl Iterator<Item = &DivisorClass> {
        self.minus_one.iter().chain(&self.minus_two)
    }

    /// Whether `d` meets every negative curve nonnegatively.
    pub fn is_nef(&self, d: &DivisorClass) -> Result<bool> {
        for c in self.negative_curves() {
            if self.pairing(d, c)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The Mori cone, generated by the negative curves.
    pub fn mori_cone(&self) -> Result<Cone> {
        let rays: Vec<Vec<i64>> = self.negative_curves().map(|c| c.coeffs().to_vec()).collect();
        Cone::from_rays(self.rank(), &rays)
    }

    /// The closed ample cone: the dual of the Mori cone under the intersection form.
    pub fn ample_cone(&self) -> Result<Cone> {
        self.dual_wrt_pairing(&self.mori_cone()?)
    }

    /// The negative curves as linear functionals `x ↦ x·C`; the open ample
    /// cone is where all of them are positive.
    pub fn ample_functionals(&self) -> Vec<Vec<i64>> {
        let d = self.form_diagonal();
        self.negative_curves().map(|c| c.coeffs().iter().zip(&d).map(|(x, y)| x * y).collect()).collect()
    }

    /// Whether the relative interior of `c` contains an ample class. Avoids
    /// building the ample cone, which is expensive in degree 1.
    pub fn relint_meets_ample(&self, c: &Cone) -> Result<bool> {
        if c.ambient_dim() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: c.ambient_dim() });
        }
        c.relint_meets_open(&self.ample_functionals())
    }

    /// `{x : x·g >= 0 for every generator g of c}`.
    pub fn dual_wrt_pairing(&self, c: &Cone) -> Result<Cone> {
        if c.ambient_dim() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: c.ambient_dim() });
        }
        c.dual_wrt_diagonal(&self.form_diagonal())
    }

    pub fn cone_of(&self, classes: &[DivisorClass]) -> Result<Cone> {
        for c in classes {
            self.check_class(c)?;
        }
        let rays: Vec<Vec<i64>> = classes.iter().map(|c| c.coeffs().to_vec()).collect();
        Cone::from_rays(self.rank(), &rays)
    }
}

fn check_degree(degree: i64) -> Result<(usize, usize)> {
    if !(1..=7).contains(&degree) {
        return Err(Error::InvalidDegree(degree));
    }
    Ok((degree as usize, (9 - degree) as usize))
}

pub(crate) fn sorted_classes(it: impl IntoIterator<Item = DivisorClass>) -> Vec<DivisorClass> {
    let mut v: Vec<DivisorClass> = it.into_iter().collect();
    v.sort();
    v.dedup();
    v
}
