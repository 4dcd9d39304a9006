//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use cylflex::{Contraction, Cylinder, CylinderCollection, SurfaceType};

/// Del Pezzo surface of the given degree.
pub fn del_pezzo(degree: i64) -> Arc<SurfaceType> {
    Arc::new(SurfaceType::del_pezzo(degree).expect("degree in 1..=9"))
}

/// One cuspidal-cubic cylinder through the last four points.
pub fn cuspidal_collection(s: &Arc<SurfaceType>) -> CylinderCollection {
    let m = s.m();
    let four: Vec<usize> = (m - 3..=m).collect();
    let u = Cylinder::make_cuspcubic(s, &Contraction::standard(m), &four).expect("at least four points");
    CylinderCollection::new(s, vec![u]).expect("members share the surface")
}
