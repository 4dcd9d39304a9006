use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cylflex::picard::exceptional_vectors;
use cylflex::{cone_representative, ConeLabel, SurfaceType};
use cylflex_bench::{cuspidal_collection, del_pezzo};

fn curves(c: &mut Criterion) {
    c.bench_function("exceptional vectors, 8 points", |b| b.iter(|| exceptional_vectors(black_box(8))));
    c.bench_function("surface type, degree 3", |b| b.iter(|| SurfaceType::del_pezzo(black_box(3)).unwrap()));
}

fn cones(c: &mut Criterion) {
    let s = del_pezzo(4);
    c.bench_function("mori cone, degree 4", |b| b.iter(|| s.mori_cone().unwrap()));
    let ne = s.mori_cone().unwrap();
    c.bench_function("dual of mori cone, degree 4", |b| b.iter(|| ne.dual().unwrap()));
    c.bench_function("open subdivision toward -K, degree 4", |b| {
        b.iter(|| ne.open_subdivision(s.anticanonical().coeffs()).unwrap())
    });
}

fn verdicts(c: &mut Criterion) {
    let s = del_pezzo(3);
    let b3 = cone_representative(&s, ConeLabel::B(3)).unwrap();
    c.bench_function("cuspidal pencil verdicts on B(3), degree 3", |b| {
        b.iter(|| {
            let col = cuspidal_collection(&s);
            col.is_generically_flexible_on(&b3).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = curves, cones, verdicts
}
criterion_main!(benches);
