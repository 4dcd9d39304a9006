//! Parsers for the `--cone` and `--construction` arguments.
//!
//! Cone specs: a label (`B(3)`, `C(P)`, …), `Ample`, `NE`, an inline JSON
//! list of rays, or `@path` to a file holding such a list. A ray is either an
//! integer array in the basis `(L, E1, …, Em)` or a class string like
//! `"2L-E1-E2"`.
//!
//! Construction specs, all with the standard contraction:
//!
//! * `lines:7` or `lines:7,8` — one cylinder per center;
//! * `cuspcubic:last4` or `cuspcubic:3,4,5,6`;
//! * `tangent:conic=4..8,tangent=3,groups=[1|2]` — point sets are single
//!   points, ranges `a..b` or `+`-joined lists; groups are `|`-separated;
//! * `generic:@path` — a JSON file with `complement`, `support`, `fiber`,
//!   optional `transversal` (`true`, `false` or `"unknown"`) and optional
//!   `contraction` (the exceptional classes `e_1, …, e_m`).

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use cylflex::{
    cone_representative, Cone, ConeLabel, ConstructionKind, Contraction, Cylinder, DivisorClass, SurfaceType,
    Transversality,
};
use serde::Deserialize;

/// Invalid command-line input; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

macro_rules! input {
    ($($t:tt)*) => { anyhow::Error::new(InputError(format!($($t)*))) };
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RayItem {
    Coeffs(Vec<i64>),
    Class(String),
}

fn ray_of(item: RayItem, s: &SurfaceType) -> Result<Vec<i64>> {
    match item {
        RayItem::Coeffs(v) => {
            if v.len() != s.rank() {
                return Err(cylflex::Error::LengthMismatch { expected: s.rank(), got: v.len() }.into());
            }
            Ok(v)
        }
        RayItem::Class(t) => Ok(DivisorClass::parse(&t, s.m())?.coeffs().to_vec()),
    }
}

/// Resolves `@path` arguments to file contents.
pub fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}")),
        None => Ok(text.to_string()),
    }
}

/// A parsed `--cone` value with its label when it had one.
pub struct TargetCone {
    pub label: Option<String>,
    pub cone: Cone,
}

pub fn parse_cone(spec: &str, s: &SurfaceType) -> Result<TargetCone> {
    let spec = spec.trim();
    match spec {
        "Ample" | "ample" => return Ok(TargetCone { label: Some("Ample".into()), cone: s.ample_cone()? }),
        "NE" | "ne" => return Ok(TargetCone { label: Some("NE".into()), cone: s.mori_cone()? }),
        _ => {}
    }
    if spec.starts_with('[') || spec.starts_with('@') {
        let text = read_arg(spec)?;
        let items: Vec<RayItem> =
            serde_json::from_str(&text).map_err(|e| input!("cone ray list: {e}"))?;
        let rays = items.into_iter().map(|i| ray_of(i, s)).collect::<Result<Vec<_>>>()?;
        return Ok(TargetCone { label: None, cone: Cone::from_rays(s.rank(), &rays)? });
    }
    let label: ConeLabel = spec.parse()?;
    Ok(TargetCone { label: Some(label.to_string()), cone: cone_representative(s, label)? })
}

fn points(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(vec![]);
    }
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| input!("bad point `{t}`"));
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            bail!(InputError(format!("empty range `{text}`")));
        }
        return Ok((a..=b).collect());
    }
    text.split(['+', ',']).map(num).collect()
}

fn tangent_args(args: &str) -> Result<(Vec<usize>, Vec<usize>, Vec<Vec<usize>>)> {
    let (mut conic, mut tangent, mut groups) = (None, vec![], vec![]);
    // split on commas outside brackets
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in args.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&args[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&args[start..]);
    for part in parts {
        let (key, value) = part.split_once('=').ok_or_else(|| input!("expected key=value, got `{part}`"))?;
        match key.trim() {
            "conic" => conic = Some(points(value)?),
            "tangent" => tangent = points(value)?,
            "groups" => {
                let inner = value
                    .trim()
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| input!("groups must look like [1|2+3]"))?;
                groups = inner.split('|').filter(|g| !g.trim().is_empty()).map(points).collect::<Result<_>>()?;
            }
            other => bail!(InputError(format!("unknown tangent parameter `{other}`"))),
        }
    }
    let conic = conic.ok_or_else(|| input!("tangent construction needs conic=…"))?;
    Ok((conic, tangent, groups))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenericFile {
    complement: Vec<RayItem>,
    support: Vec<RayItem>,
    fiber: RayItem,
    #[serde(default)]
    transversal: Option<serde_json::Value>,
    #[serde(default)]
    contraction: Option<Vec<RayItem>>,
}

fn generic(text: &str, s: &Arc<SurfaceType>) -> Result<Cylinder> {
    let g: GenericFile = serde_json::from_str(text).map_err(|e| input!("generic cylinder file: {e}"))?;
    let classes = |v: Vec<RayItem>| -> Result<Vec<DivisorClass>> {
        v.into_iter().map(|i| ray_of(i, s).map(DivisorClass::new)).collect()
    };
    let transversal = match g.transversal {
        None => Transversality::Unknown,
        Some(serde_json::Value::Bool(b)) => Transversality::from(b),
        Some(serde_json::Value::String(t)) if t == "unknown" => Transversality::Unknown,
        Some(other) => bail!(InputError(format!("transversal must be true, false or \"unknown\", got {other}"))),
    };
    let contraction = match g.contraction {
        None => Contraction::standard(s.m()),
        Some(v) => Contraction::new(classes(v)?)?,
    };
    let fiber = DivisorClass::new(ray_of(g.fiber, s)?);
    Ok(Cylinder::make_generic(s, &contraction, &classes(g.complement)?, &classes(g.support)?, &fiber, transversal)?)
}

/// Cylinders described by one `--construction` value.
pub fn parse_construction(spec: &str, s: &Arc<SurfaceType>) -> Result<Vec<Cylinder>> {
    let (tag, args) = spec.split_once(':').unwrap_or((spec, ""));
    let kind = ConstructionKind::from_tag(tag.trim()).ok_or_else(|| input!("unknown construction `{tag}`"))?;
    let c = Contraction::standard(s.m());
    let m = s.m();
    Ok(match kind {
        ConstructionKind::Lines => {
            let centers = points(args)?;
            if centers.is_empty() {
                bail!(InputError("lines needs at least one center, e.g. lines:7".into()));
            }
            centers.into_iter().map(|i| Cylinder::make_lines(s, &c, i)).collect::<cylflex::Result<_>>()?
        }
        ConstructionKind::CuspCubic => {
            let four = match args.trim() {
                "" | "last4" => {
                    if m < 4 {
                        bail!(InputError(format!("cuspcubic:last4 needs at least four points, surface has {m}")));
                    }
                    (m - 3..=m).collect()
                }
                other => points(other)?,
            };
            vec![Cylinder::make_cuspcubic(s, &c, &four)?]
        }
        ConstructionKind::Tangent => {
            let (conic, tangent, groups) = tangent_args(args)?;
            vec![Cylinder::make_tangent(s, &c, &conic, &tangent, &groups)?]
        }
        ConstructionKind::Generic => {
            let path = args.trim().strip_prefix('@').ok_or_else(|| input!("generic needs @path"))?;
            vec![generic(&read_arg(&format!("@{path}"))?, s)?]
        }
    })
}

/// Construction kinds for `cover`: comma-separated tags.
pub fn parse_kinds(specs: &[String]) -> Result<Vec<ConstructionKind>> {
    let mut out = Vec::new();
    for tag in specs.iter().flat_map(|s| s.split(',')) {
        let kind = ConstructionKind::from_tag(tag.trim())
            .filter(|k| *k != ConstructionKind::Generic)
            .ok_or_else(|| anyhow!(InputError(format!("cover takes lines, tangent or cuspcubic, got `{tag}`"))))?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    out.sort();
    Ok(out)
}

/// Short text form of a cylinder's construction, in the spec grammar.
pub fn describe(u: &Cylinder) -> String {
    let set = |v: &[usize]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+");
    let mut text = match u.construction() {
        cylflex::Construction::Lines { center } => format!("lines:{center}"),
        cylflex::Construction::CuspCubic { four } => format!("cuspcubic:{}", set(four)),
        cylflex::Construction::Tangent { conic, tangent, groups } => {
            let g: Vec<String> = groups.iter().map(|g| set(g)).collect();
            format!("tangent:conic={},tangent={},groups=[{}]", set(conic), set(tangent), g.join("|"))
        }
        cylflex::Construction::Generic => "generic".to_string(),
    };
    if !u.contraction().is_standard() {
        let e: Vec<String> = u.contraction().exceptional_classes().iter().map(|d| d.to_string()).collect();
        text.push_str(&format!(" @ ({})", e.join(", ")));
    }
    text
}
