//! Surface configuration files.

use std::path::Path;

use anyhow::{Context, Result};
use cylflex::{DegenerationData, SurfaceFlags};
use serde::{Deserialize, Serialize};

/// JSON form of a surface type. Point indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub degree: i64,
    #[serde(default)]
    pub collinear_triples: Vec<[usize; 3]>,
    /// `[child, parent]` pairs.
    #[serde(default)]
    pub infinitely_near: Vec<(usize, usize)>,
    #[serde(default)]
    pub conic_sixes: Vec<[usize; 6]>,
    /// `[node, [seven other points]]`.
    #[serde(default)]
    pub cusp_cubics: Vec<(usize, [usize; 7])>,
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default = "yes")]
    pub admits_cuspidal_anticanonical: bool,
}

fn yes() -> bool {
    true
}

impl Default for Flags {
    fn default() -> Self {
        Flags { admits_cuspidal_anticanonical: true }
    }
}

impl SurfaceConfig {
    pub fn del_pezzo(degree: i64) -> SurfaceConfig {
        SurfaceConfig::from_parts(degree, &DegenerationData::default(), SurfaceFlags::default())
    }

    pub fn from_parts(degree: i64, d: &DegenerationData, flags: SurfaceFlags) -> SurfaceConfig {
        SurfaceConfig {
            degree,
            collinear_triples: d.collinear_triples.clone(),
            infinitely_near: d.infinitely_near.clone(),
            conic_sixes: d.conic_sixes.clone(),
            cusp_cubics: d.cusp_cubics.clone(),
            flags: Flags { admits_cuspidal_anticanonical: flags.admits_cuspidal_anticanonical },
        }
    }

    pub fn parse(text: &str) -> Result<SurfaceConfig> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<SurfaceConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        SurfaceConfig::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn degenerations(&self) -> DegenerationData {
        DegenerationData {
            collinear_triples: self.collinear_triples.clone(),
            infinitely_near: self.infinitely_near.clone(),
            conic_sixes: self.conic_sixes.clone(),
            cusp_cubics: self.cusp_cubics.clone(),
        }
    }

    pub fn surface_flags(&self) -> SurfaceFlags {
        SurfaceFlags { admits_cuspidal_anticanonical: self.flags.admits_cuspidal_anticanonical }
    }

    /// Same configuration with every list sorted, so equal surfaces hash equally.
    pub fn canonical(&self) -> SurfaceConfig {
        SurfaceConfig::from_parts(self.degree, &self.degenerations().canonicalized(), self.surface_flags())
    }
}
