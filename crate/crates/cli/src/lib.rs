//! Library side of the `cylflex` command: argument definitions, command
//! execution and error classification. `main.rs` only parses and prints.

pub mod cache;
pub mod config;
pub mod report;
pub mod spec;

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cylflex::cone::DEFAULT_INCLUSION_EXCLUSION_CAP;
use cylflex::flex::{anticanonical_functional, coverage_fraction_of_cones};
use cylflex::{cone_types, Cone, CylinderCollection, SurfaceType};
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use config::SurfaceConfig;
use report::{CollectionReport, ConeReport, Curves, Report, SurfaceSummary, VERSION};
use spec::InputError;

#[derive(Parser, Debug)]
#[command(name = "cylflex", version, about = "Exact flexibility certificates for affine cones over del Pezzo surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Degree of a del Pezzo surface (points in general position).
    #[arg(long, global = true, conflicts_with = "config")]
    pub degree: Option<i64>,
    /// Surface configuration file (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Do not read or write the curve-table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Directory of the curve-table cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summary of the surface type.
    Surface,
    /// Lists of (-1)- and (-2)-curves.
    Curves,
    /// Rays of one cone, or of every subdivision representative.
    Cones {
        #[arg(long)]
        cone: Option<String>,
    },
    /// Verdicts for the collection of the given constructions on a cone.
    Check {
        /// Construction spec, repeatable (see `spec` docs).
        #[arg(long = "construction", required = true)]
        constructions: Vec<String>,
        #[arg(long)]
        cone: String,
        #[command(flatten)]
        options: CampaignOptions,
    },
    /// Verdicts for all cylinders of the given kinds over all contractions.
    Cover {
        /// Construction kinds: lines, tangent, cuspcubic (comma-separated or repeated).
        #[arg(long = "construction", required = true)]
        constructions: Vec<String>,
        #[arg(long)]
        cone: String,
        #[command(flatten)]
        options: CampaignOptions,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CampaignOptions {
    /// Drop members whose removal keeps both polarity and forbidden cones.
    #[arg(long)]
    pub reduce: bool,
    /// Keep only members polar on the whole cone.
    #[arg(long)]
    pub polar_filter: bool,
    /// Report the fraction of the cone's (−K,·) = 1 section covered by
    /// polarity cones.
    #[arg(long)]
    pub volume: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Surface => "surface",
            Command::Curves => "curves",
            Command::Cones { .. } => "cones",
            Command::Check { .. } => "check",
            Command::Cover { .. } => "cover",
        }
    }
}

/// Exit code for a failure: 3 for internal caps, 2 for everything caused
/// by the input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<cylflex::Error>() {
        Some(e) if e.is_cap() => 3,
        _ => 2,
    }
}

/// Error name shown before the message.
pub fn error_name(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<cylflex::Error>() {
        return e.name();
    }
    if err.downcast_ref::<InputError>().is_some() {
        return "InvalidInput";
    }
    if err.downcast_ref::<serde_json::Error>().is_some() {
        return "InvalidJson";
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return "Io";
    }
    "Error"
}

fn surface_config(common: &Common) -> Result<SurfaceConfig> {
    match (&common.config, common.degree) {
        (Some(path), _) => SurfaceConfig::load(path),
        (None, Some(d)) => Ok(SurfaceConfig::del_pezzo(d)),
        (None, None) => bail!(InputError("either --degree or --config is required".into())),
    }
}

/// Text the hash covers for an argument that may name a file.
fn resolved(arg: &str) -> Result<String> {
    if let Some(i) = arg.find('@') {
        return Ok(format!("{}{}", &arg[..i], spec::read_arg(&arg[i..])?));
    }
    Ok(arg.to_string())
}

fn input_hash(command: &Command, config: &SurfaceConfig) -> Result<String> {
    let (cone, constructions, options) = match command {
        Command::Cones { cone } => (cone.clone(), vec![], None),
        Command::Check { constructions, cone, options } | Command::Cover { constructions, cone, options } => {
            (Some(cone.clone()), constructions.clone(), Some(*options))
        }
        _ => (None, vec![], None),
    };
    let input = serde_json::json!({
        "command": command.name(),
        "surface": config.canonical(),
        "cone": cone.map(|c| resolved(&c)).transpose()?,
        "constructions": constructions.iter().map(|c| resolved(c)).collect::<Result<Vec<_>>>()?,
        "options": options.map(|o| serde_json::json!({
            "reduce": o.reduce, "polar_filter": o.polar_filter, "volume": o.volume,
        })),
    });
    Ok(hex::encode(Sha256::digest(input.to_string().as_bytes())))
}

fn fraction(x: &num_rational::BigRational) -> Result<[i64; 2]> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(cylflex::Error::Overflow.into()),
    }
}

/// Polarity cones of the members, without duplicates or cones inside others.
fn distinct_pieces(col: &CylinderCollection) -> Result<Vec<Cone>> {
    let mut pieces: Vec<Cone> = Vec::new();
    for u in col.cylinders() {
        let c = u.pol_cone()?;
        if !pieces.contains(c) {
            pieces.push(c.clone());
        }
    }
    let mut keep = Vec::new();
    for (i, c) in pieces.iter().enumerate() {
        let mut inside = false;
        for (j, d) in pieces.iter().enumerate() {
            if i != j && c.is_subset_of(d)? {
                inside = true;
                break;
            }
        }
        if !inside {
            keep.push(c.clone());
        }
    }
    Ok(keep)
}

fn campaign(
    s: &Arc<SurfaceType>,
    mut col: CylinderCollection,
    target: &spec::TargetCone,
    options: CampaignOptions,
    per_member_volume: bool,
) -> Result<(CollectionReport, Option<[i64; 2]>)> {
    if options.polar_filter {
        col = col.make_polar_on(&target.cone)?;
    }
    if options.reduce {
        col = col.reduce()?;
    }
    let report = CollectionReport::new(&col, &target.cone)?;
    let coverage = if options.volume {
        let level = anticanonical_functional(s);
        let pieces = if per_member_volume { distinct_pieces(&col)? } else { vec![col.pol()?.clone()] };
        let f = coverage_fraction_of_cones(&target.cone, &pieces, &level, DEFAULT_INCLUSION_EXCLUSION_CAP)?;
        Some(fraction(&f)?)
    } else {
        None
    };
    Ok((report, coverage))
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let config = surface_config(&cli.common)?;
    let cache_dir = if cli.common.no_cache { None } else { cli.common.cache_dir.clone().or_else(cache::default_dir) };
    let s = Arc::new(cache::load_or_build(&config, cache_dir.as_deref())?);
    let mut report = Report {
        version: VERSION,
        command: cli.command.name(),
        input_hash: input_hash(&cli.command, &config)?,
        surface: SurfaceSummary::new(&s, &config),
        curves: None,
        cones: None,
        cone: None,
        collection: None,
        coverage: None,
    };
    match &cli.command {
        Command::Surface => {}
        Command::Curves => report.curves = Some(Curves::new(&s)),
        Command::Cones { cone: Some(spec) } => {
            let t = spec::parse_cone(spec, &s)?;
            report.cones = Some(vec![ConeReport::new(t.label, &t.cone)]);
        }
        Command::Cones { cone: None } => {
            let mut all = Vec::new();
            for label in cone_types(&s) {
                let k = cylflex::cone_representative(&s, label)?;
                all.push(ConeReport::new(Some(label.to_string()), &k));
            }
            report.cones = Some(all);
        }
        Command::Check { constructions, cone, options } => {
            let target = spec::parse_cone(cone, &s)?;
            let mut members = Vec::new();
            for c in constructions {
                members.extend(spec::parse_construction(c, &s)?);
            }
            let col = CylinderCollection::new(&s, members)?;
            let (r, coverage) = campaign(&s, col, &target, *options, false)?;
            report.cone = Some(ConeReport::new(target.label, &target.cone));
            report.collection = Some(r);
            report.coverage = coverage;
        }
        Command::Cover { constructions, cone, options } => {
            let target = spec::parse_cone(cone, &s)?;
            let kinds = spec::parse_kinds(constructions)?;
            let col = s.all_cylinders(&kinds)?;
            let (r, coverage) = campaign(&s, col, &target, *options, true)?;
            report.cone = Some(ConeReport::new(target.label, &target.cone));
            report.collection = Some(r);
            report.coverage = coverage;
        }
    }
    Ok(report)
}

/// Rendered output for the chosen format.
pub fn render(cli: &Cli, report: &Report) -> String {
    match cli.common.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}
