//! Reports and their two renderings.
//!
//! JSON output is deterministic: struct fields serialize in declaration
//! order, every list is produced in canonical order, and nothing depends on
//! time, paths or the cache.

use std::fmt::Write as _;

use cylflex::{Cone, Cylinder, CylinderCollection, DivisorClass, SurfaceType};
use serde::Serialize;

use crate::config::SurfaceConfig;
use crate::spec::describe;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: &'static str,
    pub input_hash: String,
    pub surface: SurfaceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curves: Option<Curves>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<ConeReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collection: Option<CollectionReport>,
    /// `[numerator, denominator]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<[i64; 2]>,
}

#[derive(Serialize)]
pub struct SurfaceSummary {
    pub degree: usize,
    pub m: usize,
    pub weak: bool,
    pub config: SurfaceConfig,
    pub minus_one_count: usize,
    pub minus_two_count: usize,
}

#[derive(Serialize)]
pub struct Curves {
    pub minus_one: Vec<Vec<i64>>,
    pub minus_two: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct ConeReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct CylinderReport {
    pub construction: String,
    pub complement: Vec<Vec<i64>>,
    pub fixed_complement: Vec<Vec<i64>>,
    pub fiber: Vec<i64>,
    pub transversal: &'static str,
}

#[derive(Serialize)]
pub struct Verdicts {
    pub polar: bool,
    pub complete: bool,
    pub transversal: bool,
    pub generically_flexible: bool,
}

#[derive(Serialize)]
pub struct CollectionReport {
    pub size: usize,
    pub cylinders: Vec<CylinderReport>,
    pub verdicts: Verdicts,
    pub pol: ConeReport,
    pub forb: ConeReport,
}

fn rows(v: &[DivisorClass]) -> Vec<Vec<i64>> {
    v.iter().map(|d| d.coeffs().to_vec()).collect()
}

impl SurfaceSummary {
    pub fn new(s: &SurfaceType, config: &SurfaceConfig) -> SurfaceSummary {
        SurfaceSummary {
            degree: s.degree(),
            m: s.m(),
            weak: s.is_weak(),
            config: config.canonical(),
            minus_one_count: s.minus_one_curves().len(),
            minus_two_count: s.minus_two_curves().len(),
        }
    }
}

impl Curves {
    pub fn new(s: &SurfaceType) -> Curves {
        Curves { minus_one: rows(s.minus_one_curves()), minus_two: rows(s.minus_two_curves()) }
    }
}

impl ConeReport {
    pub fn new(label: Option<String>, c: &Cone) -> ConeReport {
        // classes read best in the canonical class order
        let sorted = |v: &[Vec<i64>]| {
            let mut d: Vec<DivisorClass> = v.iter().map(|r| DivisorClass::new(r.clone())).collect();
            d.sort();
            rows(&d)
        };
        ConeReport { label, dim: c.dim(), rays: sorted(c.rays()), lineality: sorted(c.lineality()) }
    }
}

impl CylinderReport {
    pub fn new(u: &Cylinder) -> CylinderReport {
        CylinderReport {
            construction: describe(u),
            complement: rows(u.complement()),
            fixed_complement: rows(&u.fixed_complement()),
            fiber: u.fiber().coeffs().to_vec(),
            transversal: u.transversal().as_str(),
        }
    }
}

impl CollectionReport {
    pub fn new(col: &CylinderCollection, k: &Cone) -> cylflex::Result<CollectionReport> {
        let polar = col.is_polar_on(k)?;
        let complete = col.is_complete_on(k)?;
        let transversal = col.is_transversal();
        Ok(CollectionReport {
            size: col.len(),
            cylinders: col.cylinders().iter().map(CylinderReport::new).collect(),
            verdicts: Verdicts { polar, complete, transversal, generically_flexible: polar && complete && transversal },
            pol: ConeReport::new(None, col.pol()?),
            forb: ConeReport::new(None, col.forb()?),
        })
    }
}

fn class(v: &[i64]) -> String {
    DivisorClass::new(v.to_vec()).to_string()
}

fn cone_text(c: &ConeReport) -> String {
    let mut parts: Vec<String> = c.rays.iter().map(|r| class(r)).collect();
    parts.extend(c.lineality.iter().map(|l| format!("±{}", class(l))));
    if parts.is_empty() {
        return "{0}".into();
    }
    format!("Cone({})", parts.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = String::new();
        pretty(&value, 0, &mut s);
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.surface;
        let kind = if s.weak { "weak del Pezzo" } else { "del Pezzo" };
        let _ = writeln!(out, "cylflex {}  input {}", self.version, &self.input_hash[..16]);
        let _ = writeln!(
            out,
            "surface: degree {} ({} points), {kind}; {} (-1)-curves, {} (-2)-curves",
            s.degree, s.m, s.minus_one_count, s.minus_two_count
        );
        let c = &s.config;
        for (name, n) in [
            ("collinear triples", c.collinear_triples.len()),
            ("infinitely near pairs", c.infinitely_near.len()),
            ("conics through six", c.conic_sixes.len()),
            ("cuspidal cubics", c.cusp_cubics.len()),
        ] {
            if n > 0 {
                let _ = writeln!(out, "  {name}: {n}");
            }
        }
        if let Some(curves) = &self.curves {
            let _ = writeln!(out, "(-1)-curves:");
            for r in &curves.minus_one {
                let _ = writeln!(out, "  {}", class(r));
            }
            let _ = writeln!(out, "(-2)-curves:");
            for r in &curves.minus_two {
                let _ = writeln!(out, "  {}", class(r));
            }
        }
        if let Some(cones) = &self.cones {
            for c in cones {
                let _ = writeln!(out, "{} = {}", c.label.as_deref().unwrap_or("cone"), cone_text(c));
            }
        }
        if let Some(c) = &self.cone {
            let name = c.label.as_deref().unwrap_or("given rays");
            let _ = writeln!(out, "cone: {name} = {}  (dim {})", cone_text(c), c.dim);
        }
        if let Some(col) = &self.collection {
            let _ = writeln!(out, "cylinders: {}", col.size);
            for u in &col.cylinders {
                let _ = writeln!(out, "  {}", u.construction);
            }
            let v = &col.verdicts;
            let _ = writeln!(out, "polar: {}", v.polar);
            let _ = writeln!(out, "complete: {}", v.complete);
            let _ = writeln!(out, "transversal: {}", v.transversal);
            let _ = writeln!(out, "generically flexible: {}", v.generically_flexible);
            let _ = writeln!(out, "pol: {}", cone_text(&col.pol));
            let _ = writeln!(out, "forb: {}", cone_text(&col.forb));
        }
        if let Some([n, d]) = self.coverage {
            let _ = writeln!(out, "coverage: {n}/{d}");
        }
        out
    }
}

/// Indented JSON that keeps arrays of scalars (class coefficients) on one
/// line.
fn pretty(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalars serialize").replace(',', ", "));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                pretty(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                pretty(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}
