//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Every expected value that is not a published constant is computed
//! here by an oracle that shares no code with the library.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use cylflex::catalog;
use cylflex::cone::{union_section_volume_within, DEFAULT_INCLUSION_EXCLUSION_CAP};
use cylflex::flex::coverage_fraction_of_cones;
use cylflex::picard::exceptional_vectors;
use cylflex::{
    cone_representative, Cone, ConeLabel, Contraction, Cylinder, CylinderCollection, DegenerationData, DivisorClass,
    SurfaceType,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn surface(degree: i64) -> Arc<SurfaceType> {
    Arc::new(SurfaceType::del_pezzo(degree).unwrap())
}

fn classes(s: &SurfaceType, names: &[&str]) -> Vec<DivisorClass> {
    names.iter().map(|n| DivisorClass::parse(n, s.m()).unwrap()).collect()
}

fn cone(s: &SurfaceType, names: &[&str]) -> Cone {
    s.cone_of(&classes(s, names)).unwrap()
}

fn same_cone(a: &Cone, b: &Cone) -> bool {
    a.is_subset_of(b).unwrap() && b.is_subset_of(a).unwrap()
}

fn cuspidal(s: &Arc<SurfaceType>) -> CylinderCollection {
    let m = s.m();
    let four: Vec<usize> = (m - 3..=m).collect();
    let u = Cylinder::make_cuspcubic(s, &Contraction::standard(m), &four).unwrap();
    CylinderCollection::new(s, vec![u]).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) {
    let t = start.elapsed();
    assert!(t < limit, "{what} took {t:.2?}, limit {limit:?}");
}

fn cuspidal_pencil_verdicts() {
    let start = Instant::now();
    let s = surface(3);
    let col = cuspidal(&s);
    let b3 = cone_representative(&s, ConeLabel::B(3)).unwrap();
    assert!(!col.is_polar_on(&b3).unwrap(), "polar on B(3)");
    assert!(col.is_complete_on(&b3).unwrap(), "complete on B(3)");
    assert!(col.is_transversal(), "transversal");
    assert!(!col.is_generically_flexible_on(&b3).unwrap(), "flexible on B(3)");
    for strict in [false, true] {
        assert_eq!(col.compatible_representatives(strict).unwrap(), vec![ConeLabel::B(2), ConeLabel::Ck(2)]);
    }
    let s = surface(4);
    let b1 = cone_representative(&s, ConeLabel::B(1)).unwrap();
    assert!(cuspidal(&s).is_generically_flexible_on(&b1).unwrap(), "degree 4 on B(1)");
    within(start, Duration::from_secs(5), "cuspidal pencil checks");
}

fn degree_one_line_pencils() {
    let start = Instant::now();
    let s = surface(1);
    let c = Contraction::standard(8);
    let us = [7, 8].map(|i| Cylinder::make_lines(&s, &c, i).unwrap());
    let col = CylinderCollection::new(&s, us.to_vec()).unwrap();
    let pol = cone(
        &s,
        &["L-E1", "L-E2", "L-E3", "L-E4", "L-E5", "L-E6", "L-E7-E8", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"],
    );
    let forb = cone(&s, &["L-E7-E8", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"]);
    assert!(same_cone(col.pol().unwrap(), &pol), "pol");
    assert!(same_cone(col.forb().unwrap(), &forb), "forb");
    assert!(col.is_generically_flexible_on(&pol).unwrap(), "flexible on pol");
    within(start, Duration::from_secs(30), "degree 1 line pencils");
}

fn degree_one_tangent_conics() {
    let s = surface(1);
    let u = Cylinder::make_tangent(&s, &Contraction::standard(8), &[4, 5, 6, 7, 8], &[3], &[vec![1], vec![2]]).unwrap();
    let col = CylinderCollection::new(&s, vec![u]).unwrap();
    let pol = col.pol().unwrap();
    let mut want: Vec<DivisorClass> =
        classes(&s, &["2L-E1", "2L-E2", "L-E3", "2L-E4-E5-E6-E7-E8", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8"]);
    want.sort();
    let mut got: Vec<DivisorClass> = pol.rays().iter().map(|r| DivisorClass::new(r.clone())).collect();
    got.sort();
    assert_eq!(got, want, "pol rays");
    assert!(pol.lineality().is_empty());
    assert!(col.is_generically_flexible_on(pol).unwrap(), "flexible on pol");
}

fn weak_sextics() {
    let s = catalog::collinear_sextic_surface().unwrap();
    let ample = s.ample_cone().unwrap();
    assert_eq!(ample, cone(&s, &["L", "L-E1", "L-E2", "L-E3"]), "collinear ample cone");
    let col = catalog::collinear_sextic_collection(&s).unwrap();
    assert!(col.is_generically_flexible_on(&ample).unwrap(), "collinear flexibility");

    // the chain E1 > E2 makes 2L−E1−E2 a ray in its own right
    let s = catalog::infinitely_near_sextic_surface().unwrap();
    let ample = s.ample_cone().unwrap();
    assert_eq!(ample, cone(&s, &["L", "L-E1", "2L-E1-E2", "L-E3", "2L-E1-E2-E3"]), "infinitely near ample cone");
    let col = catalog::infinitely_near_sextic_collection(&s).unwrap();
    assert!(col.is_generically_flexible_on(&ample).unwrap(), "infinitely near flexibility");
}

fn partition(parent: &Cone, r: &[i64], seed: u64) {
    let members = parent.open_subdivision(r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut p = vec![0i64; parent.ambient_dim()];
        for g in parent.rays() {
            let w = rng.random_range(1..=20);
            for (x, y) in p.iter_mut().zip(g) {
                *x += w * y;
            }
        }
        let hits = members.iter().filter(|c| c.in_rel_interior(&p).unwrap()).count();
        assert_eq!(hits, 1, "point {p:?} lies in {hits} members");
    }
}

fn subdivision_partition() {
    for degree in [5, 3] {
        let s = SurfaceType::del_pezzo(degree).unwrap();
        partition(&s.mori_cone().unwrap(), s.anticanonical().coeffs(), 100 + degree as u64);
        let c = cone_representative(&s, ConeLabel::C).unwrap();
        let lm = &s.line() - &s.e(s.m()).unwrap();
        partition(&c, lm.coeffs(), 200 + degree as u64);
    }
}

/// Integer search over `c_i ∈ [−3, 3]` for `3a + Σc = 1`, `a² − Σc² = −1`.
fn brute_force_minus_one(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut c = vec![-3i64; m];
    loop {
        let s: i64 = c.iter().sum();
        if (1 - s).rem_euclid(3) == 0 {
            let a = (1 - s) / 3;
            if a * a - c.iter().map(|x| x * x).sum::<i64>() == -1 {
                out.push(std::iter::once(a).chain(c.iter().copied()).collect());
            }
        }
        let Some(k) = c.iter().position(|&x| x < 3) else { break };
        c[..k].fill(-3);
        c[k] += 1;
    }
    out.sort();
    out
}

fn form(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

fn sorted(v: &[DivisorClass]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = v.iter().map(|d| d.coeffs().to_vec()).collect();
    out.sort();
    out
}

fn curve_counts() {
    for (m, n) in (1..=8).zip([1, 3, 6, 10, 16, 27, 56, 240]) {
        let oracle = brute_force_minus_one(m);
        assert_eq!(oracle.len(), n, "oracle count for m = {m}");
        assert_eq!(sorted(&exceptional_vectors(m)), oracle, "m = {m}");
    }
    let none = DegenerationData::default;
    let cases: Vec<(i64, DegenerationData, Vec<i64>)> = vec![
        (6, DegenerationData { collinear_triples: vec![[1, 2, 3]], ..none() }, vec![1, -1, -1, -1]),
        (6, DegenerationData { infinitely_near: vec![(2, 1)], ..none() }, vec![0, 1, -1, 0]),
        (4, DegenerationData { collinear_triples: vec![[2, 4, 5]], ..none() }, vec![1, 0, -1, 0, -1, -1]),
        (3, DegenerationData { conic_sixes: vec![[1, 2, 3, 4, 5, 6]], ..none() }, vec![2, -1, -1, -1, -1, -1, -1]),
        (
            1,
            DegenerationData { cusp_cubics: vec![(1, [2, 3, 4, 5, 6, 7, 8])], ..none() },
            vec![3, -2, -1, -1, -1, -1, -1, -1, -1],
        ),
    ];
    for (degree, degen, f) in cases {
        let s = SurfaceType::new(degree, degen).unwrap();
        assert_eq!(sorted(s.minus_two_curves()), vec![f.clone()], "(-2)-curves of {f:?}");
        // (-1)-classes meeting the (-2)-curve negatively are not irreducible
        let kept: Vec<Vec<i64>> =
            brute_force_minus_one(s.m()).into_iter().filter(|d| form(d, &f) >= 0).collect();
        assert_eq!(sorted(s.minus_one_curves()), kept, "(-1)-curves next to {f:?}");
    }
}

/// Solves `Σ λ_j g_j = v` for independent `g_j` by exact elimination.
fn solve(gens: &[&Vec<i64>], v: &[i64]) -> Option<Vec<Q>> {
    let (n, k) = (v.len(), gens.len());
    let mut a: Vec<Vec<Q>> =
        (0..n).map(|i| gens.iter().map(|g| q(g[i], 1)).chain([q(v[i], 1)]).collect()).collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, p);
        let inv = a[row][col].clone();
        a[row].iter_mut().for_each(|x| *x = &*x / &inv);
        for r in (0..n).filter(|&r| r != row) {
            let f = a[r][col].clone();
            for c in 0..=k {
                let t = &a[row][c] * &f;
                a[r][c] -= t;
            }
        }
        row += 1;
    }
    if (row..n).any(|r| !a[r][k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

fn caratheodory(gens: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    (1u32..1 << gens.len()).any(|mask| {
        let subset: Vec<&Vec<i64>> = (0..gens.len()).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        subset.len() <= v.len() && solve(&subset, v).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    })
}

fn duality_and_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vec = |rng: &mut ChaCha8Rng, d: usize, r: i64| (0..d).map(|_| rng.random_range(-r..=r)).collect::<Vec<_>>();
    for d in 2..=9 {
        for _ in 0..100 {
            let n = rng.random_range(1..=(d + 2).min(8));
            let gens: Vec<Vec<i64>> = (0..n).map(|_| vec(&mut rng, d, 2)).collect();
            let c = Cone::from_rays(d, &gens).unwrap();
            assert_eq!(c.dual().unwrap().dual().unwrap(), c, "double dual, d = {d}");
            let mut ineqs = c.inequalities().to_vec();
            for e in c.equations() {
                ineqs.push(e.clone());
                ineqs.push(e.iter().map(|x| -x).collect());
            }
            assert_eq!(Cone::from_inequalities(d, &ineqs).unwrap(), c, "inequalities back to rays, d = {d}");
            for _ in 0..4 {
                let v = vec(&mut rng, d, 3);
                let by_rays = caratheodory(&gens, &v);
                let by_ineqs = ineqs.iter().all(|f| f.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() >= 0);
                assert_eq!(c.contains(&v).unwrap(), by_rays, "membership of {v:?} in {gens:?}");
                assert_eq!(by_ineqs, by_rays, "descriptions disagree on {v:?}");
            }
        }
    }
}

fn shoelace(p: &[(Q, Q)]) -> Q {
    let twice: Q = (0..p.len())
        .map(|i| {
            let ((x1, y1), (x2, y2)) = (&p[i], &p[(i + 1) % p.len()]);
            x1 * y2 - x2 * y1
        })
        .sum();
    (twice / q(2, 1)).abs()
}

fn parameter_square_volume() {
    // the three polygons and their overlaps in the (a1, a2) unit square
    let t1 = [(q(1, 1), q(1, 2)), (q(0, 1), q(1, 1)), (q(1, 1), q(1, 1))];
    let t2 = [(q(1, 2), q(1, 1)), (q(1, 1), q(0, 1)), (q(1, 1), q(1, 1))];
    let sq = [(q(1, 2), q(1, 2)), (q(1, 1), q(1, 2)), (q(1, 1), q(1, 1)), (q(1, 2), q(1, 1))];
    let t1_sq = [(q(1, 2), q(3, 4)), (q(1, 1), q(1, 2)), (q(1, 1), q(1, 1)), (q(1, 2), q(1, 1))];
    let t2_sq = [(q(3, 4), q(1, 2)), (q(1, 1), q(1, 2)), (q(1, 1), q(1, 1)), (q(1, 2), q(1, 1))];
    // the triple overlap coincides with T1 ∩ T2, so those two terms cancel
    let oracle = shoelace(&t1) + shoelace(&t2) + shoelace(&sq) - shoelace(&t1_sq) - shoelace(&t2_sq);
    assert_eq!(oracle, q(3, 8), "shoelace oracle");

    let s = surface(2);
    let ray = |a1: i64, a2: i64| {
        let mut v: Vec<i64> = s.anticanonical().coeffs().iter().map(|x| 2 * x).collect();
        v[1] += a1;
        v[2] += a2;
        v
    };
    let region = |pts: &[(i64, i64)]| {
        Cone::from_rays(s.rank(), &pts.iter().map(|&(a, b)| ray(a, b)).collect::<Vec<_>>()).unwrap()
    };
    let pieces = [
        region(&[(2, 1), (0, 2), (2, 2)]),
        region(&[(1, 2), (2, 0), (2, 2)]),
        region(&[(1, 1), (2, 1), (2, 2), (1, 2)]),
    ];
    let square = region(&[(0, 0), (2, 0), (0, 2), (2, 2)]);
    let mut level = vec![0; s.rank()];
    level[0] = 1;
    let union = union_section_volume_within(&square, &pieces, &level, DEFAULT_INCLUSION_EXCLUSION_CAP).unwrap();
    let whole = union_section_volume_within(&square, &[square.clone()], &level, 4).unwrap();
    assert_eq!(union / whole, oracle, "union volume ratio");
    let frac = coverage_fraction_of_cones(&square, &pieces, &level, DEFAULT_INCLUSION_EXCLUSION_CAP).unwrap();
    assert_eq!(frac, oracle, "coverage fraction");
}

fn cli_determinism() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let cache = tempfile::tempdir().unwrap();
    let cache_dir = cache.path().to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["surface", "--degree", "4"],
        vec!["surface", "--config", "docs/examples/sextic-infinitely-near.json"],
        vec!["curves", "--degree", "3"],
        vec!["curves", "--config", "docs/examples/sextic-collinear.json"],
        vec!["cones", "--degree", "4"],
        vec!["cones", "--config", "docs/examples/sextic-collinear.json", "--cone", "Ample"],
        vec!["check", "--degree", "3", "--construction", "cuspcubic:last4", "--cone", "B(3)", "--volume"],
        vec![
            "check",
            "--config",
            "docs/examples/sextic-infinitely-near.json",
            "--construction",
            "generic:@docs/examples/infinitely-near-pencil-1.json",
            "--construction",
            "generic:@docs/examples/infinitely-near-pencil-2.json",
            "--cone",
            "Ample",
        ],
        vec!["cover", "--degree", "4", "--construction", "lines,cuspcubic", "--cone", "B(1)", "--reduce", "--volume"],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_cylflex")).args(args).current_dir(&root).output().unwrap();
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    for base in &commands {
        for format in ["text", "json"] {
            let mut args = base.clone();
            args.extend(["--format", format]);
            let uncached = run(&[&args[..], &["--no-cache"]].concat());
            assert_eq!(run(&[&args[..], &["--no-cache"]].concat()), uncached, "{args:?} twice");
            // first cached run writes the tables, the second reads them
            let cached = [&args[..], &["--cache-dir", &cache_dir]].concat();
            assert_eq!(run(&cached), uncached, "{args:?} writing the cache");
            assert_eq!(run(&cached), uncached, "{args:?} reading the cache");
        }
    }
    assert!(std::fs::read_dir(cache.path()).unwrap().count() > 0, "cache stayed empty");
}

fn message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panicked".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 9] = [
        ("cuspidal pencil verdicts in degrees 3 and 4", cuspidal_pencil_verdicts),
        ("degree 1, two line pencils", degree_one_line_pencils),
        ("degree 1, tangent conics", degree_one_tangent_conics),
        ("weak degree 6 ample cones and flexibility", weak_sextics),
        ("open subdivisions partition the parent", subdivision_partition),
        ("negative curve tables against brute force", curve_counts),
        ("duality and ray/inequality agreement", duality_and_representation),
        ("parameter square volume 3/8", parameter_square_volume),
        ("CLI determinism and cache parity", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let t = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({t:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({t:.2?}): {}", i + 1, message(e));
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
