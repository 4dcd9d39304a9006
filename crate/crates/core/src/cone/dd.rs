//! Double description kernel.
//!
//! Converts `{x : A x >= 0, B x = 0}` into a lineality basis plus the extreme
//! rays of the pointed part. Constraints are added one at a time; lineality
//! directions are consumed first, then the usual pos/neg ray combination with
//! the combinatorial adjacency test.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::arith::{combine, dot, lift, lower, make_primitive, Ring};
use crate::error::Result;

pub(crate) struct Generators {
    pub lineality: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
}

struct Ray<T> {
    v: Vec<T>,
    tight: FixedBitSet,
}

pub(crate) fn double_description(
    dim: usize,
    inequalities: &[Vec<i64>],
    equations: &[Vec<i64>],
) -> Result<Generators> {
    match run::<i128>(dim, inequalities, equations) {
        Some((lin, rays)) => finish(&lin, &rays),
        None => {
            let (lin, rays) = run::<BigInt>(dim, inequalities, equations)
                .expect("bigint arithmetic cannot overflow");
            finish(&lin, &rays)
        }
    }
}

fn finish<T: Ring>(lin: &[Vec<T>], rays: &[Vec<T>]) -> Result<Generators> {
    Ok(Generators {
        lineality: lin.iter().map(|v| lower(v)).collect::<Result<_>>()?,
        rays: rays.iter().map(|v| lower(v)).collect::<Result<_>>()?,
    })
}

#[allow(clippy::type_complexity)]
fn run<T: Ring>(
    dim: usize,
    inequalities: &[Vec<i64>],
    equations: &[Vec<i64>],
) -> Option<(Vec<Vec<T>>, Vec<Vec<T>>)> {
    let constraints: Vec<(Vec<T>, bool)> = equations
        .iter()
        .map(|e| (lift::<T>(e), true))
        .chain(inequalities.iter().map(|a| (lift::<T>(a), false)))
        .filter(|(a, _)| a.iter().any(|x| !x.is_zero()))
        .collect();
    let total = constraints.len();

    let mut lin: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            let mut v = vec![T::zero(); dim];
            v[i] = T::from_i64(1);
            v
        })
        .collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    let mut processed = FixedBitSet::with_capacity(total);

    for (idx, (a, is_eq)) in constraints.iter().enumerate() {
        let mut pivot = None;
        for (k, l) in lin.iter().enumerate() {
            let s = dot(a, l)?;
            if !s.is_zero() {
                pivot = Some((k, s));
                break;
            }
        }

        if let Some((k, mut s)) = pivot {
            let mut l0 = lin.swap_remove(k);
            if s.is_negative() {
                l0 = l0.iter().map(|x| x.checked_neg()).collect::<Option<_>>()?;
                s = s.checked_neg()?;
            }
            for l in lin.iter_mut() {
                let t = dot(a, l)?;
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0)?;
                    make_primitive(l);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v)?;
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l0)?;
                    make_primitive(&mut r.v);
                }
                r.tight.insert(idx);
            }
            if !is_eq {
                make_primitive(&mut l0);
                rays.push(Ray { v: l0, tight: processed.clone() });
            }
        } else {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            let mut next: Vec<Ray<T>> = Vec::new();
            let mut values = Vec::with_capacity(rays.len());
            for (i, r) in rays.iter().enumerate() {
                let v = dot(a, &r.v)?;
                if v.is_positive() {
                    pos.push(i);
                } else if v.is_negative() {
                    neg.push(i);
                }
                values.push(v);
            }

            // Two rays can only span a 2-face if they share enough tight constraints.
            let needed = (dim - lin.len()).saturating_sub(2);
            let mut created = Vec::new();
            for &p in &pos {
                for &n in &neg {
                    let mut common = rays[p].tight.clone();
                    common.intersect_with(&rays[n].tight);
                    if common.count_ones(..) < needed {
                        continue;
                    }
                    let blocked = rays.iter().enumerate().any(|(i, r)| {
                        i != p && i != n && common.is_subset(&r.tight)
                    });
                    if blocked {
                        continue;
                    }
                    let vp = &values[p];
                    let vn = &values[n];
                    // vp > 0 > vn: vp * n - vn * p lies on the hyperplane.
                    let mut w = combine(vp, &rays[n].v, vn, &rays[p].v)?;
                    make_primitive(&mut w);
                    common.insert(idx);
                    created.push(Ray { v: w, tight: common });
                }
            }

            for (i, mut r) in rays.into_iter().enumerate() {
                let v = &values[i];
                if v.is_zero() {
                    r.tight.insert(idx);
                    next.push(r);
                } else if v.is_positive() && !is_eq {
                    next.push(r);
                }
            }
            next.extend(created);
            rays = next;
        }
        processed.insert(idx);
    }

    Some((lin, rays.into_iter().map(|r| r.v).collect()))
}
