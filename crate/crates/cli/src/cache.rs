//! On-disk memoization of negative-curve tables.
//!
//! Files are keyed by a hash of the canonical degree and degenerations and
//! are written atomically (temporary file, then rename). A missing, corrupt
//! or inconsistent entry is silently recomputed, so the cache never changes
//! any output.

use std::fs;
use std::path::{Path, PathBuf};

use cylflex::{DivisorClass, SurfaceType};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::SurfaceConfig;

const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    degree: i64,
    collinear_triples: Vec<[usize; 3]>,
    infinitely_near: Vec<(usize, usize)>,
    conic_sixes: Vec<[usize; 6]>,
    cusp_cubics: Vec<(usize, [usize; 7])>,
    minus_one: Vec<Vec<i64>>,
    minus_two: Vec<Vec<i64>>,
}

/// Cache directory from the environment: `CYLFLEX_CACHE_DIR`, then the
/// XDG cache home, then `~/.cache`.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os("CYLFLEX_CACHE_DIR") {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("cylflex"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("cylflex"))
}

pub fn key(config: &SurfaceConfig) -> String {
    let c = config.canonical();
    let canonical = serde_json::json!({
        "degree": c.degree,
        "collinear_triples": c.collinear_triples,
        "infinitely_near": c.infinitely_near,
        "conic_sixes": c.conic_sixes,
        "cusp_cubics": c.cusp_cubics,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

pub fn path_for(dir: &Path, config: &SurfaceConfig) -> PathBuf {
    dir.join(format!("surface-{}.json", key(config)))
}

/// The surface for `config`, read from `dir` when a valid entry exists and
/// stored there otherwise.
pub fn load_or_build(config: &SurfaceConfig, dir: Option<&Path>) -> cylflex::Result<SurfaceType> {
    let Some(dir) = dir else {
        return build(config);
    };
    let path = path_for(dir, config);
    if let Some(s) = read(&path, config) {
        return Ok(s);
    }
    let s = build(config)?;
    // Failing to write only loses the memoization.
    let _ = write(dir, &path, config, &s);
    Ok(s)
}

fn build(config: &SurfaceConfig) -> cylflex::Result<SurfaceType> {
    SurfaceType::with_flags(config.degree, config.degenerations(), config.surface_flags())
}

fn read(path: &Path, config: &SurfaceConfig) -> Option<SurfaceType> {
    let text = fs::read_to_string(path).ok()?;
    let e: Entry = serde_json::from_str(&text).ok()?;
    let c = config.canonical();
    let same = e.format == FORMAT
        && e.degree == c.degree
        && e.collinear_triples == c.collinear_triples
        && e.infinitely_near == c.infinitely_near
        && e.conic_sixes == c.conic_sixes
        && e.cusp_cubics == c.cusp_cubics;
    if !same {
        return None;
    }
    let classes = |v: Vec<Vec<i64>>| v.into_iter().map(DivisorClass::new).collect::<Vec<_>>();
    SurfaceType::from_tables(
        c.degree,
        c.degenerations(),
        c.surface_flags(),
        classes(e.minus_one),
        classes(e.minus_two),
    )
    .ok()
}

fn write(dir: &Path, path: &Path, config: &SurfaceConfig, s: &SurfaceType) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let c = config.canonical();
    let rows = |v: &[DivisorClass]| v.iter().map(|d| d.coeffs().to_vec()).collect::<Vec<_>>();
    let entry = Entry {
        format: FORMAT,
        degree: c.degree,
        collinear_triples: c.collinear_triples,
        infinitely_near: c.infinitely_near,
        conic_sixes: c.conic_sixes,
        cusp_cubics: c.cusp_cubics,
        minus_one: rows(s.minus_one_curves()),
        minus_two: rows(s.minus_two_curves()),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &entry)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
