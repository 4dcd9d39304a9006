use super::class::{exceptional_vectors, DivisorClass};
use super::surface::SurfaceType;
use crate::error::{Error, Result};

/// Upper bound on the number of ordered contractions materialized at once.
/// Degrees 1 and 2 exceed it; use [`SurfaceType::contraction_sets`] there.
pub const DEFAULT_CONTRACTION_LIMIT: usize = 1_000_000;

/// A birational morphism to the plane, recorded by the classes `e_1..e_m`
/// of the curves it contracts and the pullback `ℓ` of a line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Contraction {
    exceptional: Vec<DivisorClass>,
    line: DivisorClass,
}

impl Contraction {
    /// The contraction of `E_1, …, E_m`.
    pub fn standard(m: usize) -> Contraction {
        let exceptional = (1..=m).map(|i| DivisorClass::exceptional(m, i).expect("index in range")).collect();
        Contraction { exceptional, line: DivisorClass::line(m) }
    }

    /// Checks the lattice conditions and computes `ℓ = (−K + Σ e_i)/3`.
    pub fn new(exceptional: Vec<DivisorClass>) -> Result<Contraction> {
        let Some(first) = exceptional.first() else {
            return Err(Error::InvalidContraction("no exceptional classes".into()));
        };
        let m = first.m();
        if exceptional.len() != m {
            return Err(Error::InvalidContraction(format!("expected {m} classes, got {}", exceptional.len())));
        }
        for (i, e) in exceptional.iter().enumerate() {
            if e.m() != m {
                return Err(Error::LengthMismatch { expected: m + 1, got: e.coeffs().len() });
            }
            if e.self_intersection() != -1 || e.anticanonical_degree() != 1 {
                return Err(Error::InvalidContraction(format!("{e} is not a (-1)-class")));
            }
            for f in &exceptional[i + 1..] {
                if e.pairing(f)? != 0 {
                    return Err(Error::InvalidContraction(format!("{e} and {f} intersect")));
                }
            }
        }
        let line = induced_line(m, &exceptional)
            .ok_or_else(|| Error::InvalidContraction("(−K + Σe)/3 is not integral".into()))?;
        Ok(Contraction { exceptional, line })
    }

    pub fn m(&self) -> usize {
        self.exceptional.len()
    }

    pub fn exceptional_classes(&self) -> &[DivisorClass] {
        &self.exceptional
    }

    pub fn line_class(&self) -> &DivisorClass {
        &self.line
    }

    /// `e_i`, 1-based.
    pub fn e(&self, i: usize) -> Result<&DivisorClass> {
        if i == 0 || i > self.m() {
            return Err(Error::IndexOutOfRange { index: i, max: self.m() });
        }
        Ok(&self.exceptional[i - 1])
    }

    pub fn is_standard(&self) -> bool {
        *self == Contraction::standard(self.m())
    }

    /// Whether both contract the same set of curves (in any order).
    pub fn same_curves(&self, other: &Contraction) -> bool {
        let mut a = self.exceptional.clone();
        let mut b = other.exceptional.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Coordinates of `d` in the basis `(ℓ, e_1, …, e_m)`.
    pub fn relabel(&self, d: &DivisorClass) -> Result<DivisorClass> {
        let mut out = Vec::with_capacity(self.m() + 1);
        out.push(d.pairing(&self.line)?);
        for e in &self.exceptional {
            out.push(-d.pairing(e)?);
        }
        Ok(DivisorClass::new(out))
    }

    /// Inverse of [`Contraction::relabel`]: the class `x_0 ℓ + Σ x_i e_i`.
    pub fn to_standard(&self, x: &DivisorClass) -> Result<DivisorClass> {
        if x.m() != self.m() {
            return Err(Error::LengthMismatch { expected: self.m() + 1, got: x.coeffs().len() });
        }
        let mut out = x.line_degree() * &self.line;
        for (i, e) in self.exceptional.iter().enumerate() {
            out = &out + &(x.coeff(i + 1) * e);
        }
        Ok(out)
    }
}

fn induced_line(m: usize, exceptional: &[DivisorClass]) -> Option<DivisorClass> {
    let mut sum = DivisorClass::anticanonical(m);
    for e in exceptional {
        sum = &sum + e;
    }
    if sum.coeffs().iter().all(|x| x % 3 == 0) {
        Some(DivisorClass::new(sum.coeffs().iter().map(|x| x / 3).collect()))
    } else {
        None
    }
}

impl SurfaceType {
    /// Unordered contractions: each set of pairwise disjoint (-1)-classes of
    /// size `m` with integral `ℓ` that is nef on this surface, listed once
    /// with its classes in canonical order.
    ///
    /// Candidates are all lattice (-1)-classes, not only irreducible curves:
    /// on a weak surface a contracted curve may be reducible (for a point
    /// infinitely near another, `E_1 = (E_1 − E_2) + E_2`). Nefness of `ℓ`
    /// selects the morphisms to the plane.
    pub fn contraction_sets(&self) -> Vec<Contraction> {
        let m = self.m();
        let candidates = exceptional_vectors(m);
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        self.extend_disjoint(&candidates, 0, &mut chosen, &mut out);
        out.sort();
        out
    }

    fn extend_disjoint(
        &self,
        candidates: &[DivisorClass],
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Contraction>,
    ) {
        let m = self.m();
        if chosen.len() == m {
            let exceptional: Vec<DivisorClass> = chosen.iter().map(|&i| candidates[i].clone()).collect();
            if let Some(line) = induced_line(m, &exceptional) {
                if self.is_nef(&line).unwrap_or(false) {
                    out.push(Contraction { exceptional, line });
                }
            }
            return;
        }
        let need = m - chosen.len();
        for i in start..candidates.len() {
            if candidates.len() - i < need {
                break;
            }
            let c = &candidates[i];
            if chosen.iter().all(|&j| candidates[j].pairing(c) == Ok(0)) {
                chosen.push(i);
                self.extend_disjoint(candidates, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }

    /// All ordered contractions, in canonical order.
    pub fn contractions(&self) -> Result<Vec<Contraction>> {
        self.contractions_capped(DEFAULT_CONTRACTION_LIMIT)
    }

    pub fn contractions_capped(&self, limit: usize) -> Result<Vec<Contraction>> {
        let sets = self.contraction_sets();
        let per_set: usize = (1..=self.m()).product();
        if sets.len().saturating_mul(per_set) > limit {
            return Err(Error::EnumerationLimit { what: "ordered contractions", limit });
        }
        let mut out = Vec::with_capacity(sets.len() * per_set);
        for set in sets {
            let mut idx: Vec<usize> = (0..self.m()).collect();
            loop {
                out.push(Contraction {
                    exceptional: idx.iter().map(|&i| set.exceptional[i].clone()).collect(),
                    line: set.line.clone(),
                });
                if !next_permutation(&mut idx) {
                    break;
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
