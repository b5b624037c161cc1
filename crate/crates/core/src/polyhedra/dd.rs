//! Double description method for `{x : E x = 0, A x >= 0}`.
//!
//! Equalities are absorbed into the lineality space before any inequality
//! is processed, so the ray phase always works on a pointed quotient.
//! Adjacency uses the combinatorial test on incidence bitsets.

use rayon::prelude::*;

use super::bits::Bits;
use crate::arith::{combine, dot, make_canonical_line, make_primitive, Int, IntVec};

pub(crate) struct DdOutput {
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

struct Ray {
    v: IntVec,
    zeros: Bits,
}

fn support(row: &[Int]) -> usize {
    row.iter().filter(|x| !x.is_zero()).count()
}

/// Processing order: increasing support size, ties lexicographic.
pub(crate) fn insertion_order(rows: &[IntVec]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| {
        support(&rows[a])
            .cmp(&support(&rows[b]))
            .then_with(|| rows[a].cmp(&rows[b]))
            .then(a.cmp(&b))
    });
    idx
}

/// Remove the direction `l0` from `lin` (it has nonzero value `a0` on `row`)
/// and make every other lineality vector orthogonal to `row`.
fn split_off_lineality(lin: &mut Vec<IntVec>, row: &[Int]) -> Option<(IntVec, Int)> {
    let vals: Vec<Int> = lin.iter().map(|l| dot(row, l)).collect();
    // prefer the sparsest direction for smaller coefficients downstream
    let pick = (0..lin.len())
        .filter(|&i| !vals[i].is_zero())
        .min_by_key(|&i| (support(&lin[i]), i))?;
    let mut l0 = lin.remove(pick);
    let mut a0 = vals[pick].clone();
    if a0.is_negative() {
        l0 = l0.iter().map(|x| -x).collect();
        a0 = -a0;
    }
    let mut vi = 0;
    for (i, val) in vals.iter().enumerate() {
        if i == pick {
            continue;
        }
        if !val.is_zero() {
            let mut nl = combine(&a0, &lin[vi], val, &l0);
            make_canonical_line(&mut nl);
            lin[vi] = nl;
        }
        vi += 1;
    }
    Some((l0, a0))
}

pub(crate) fn double_description(
    dim: usize,
    equalities: &[IntVec],
    inequalities: &[IntVec],
) -> DdOutput {
    let mut lin: Vec<IntVec> = (0..dim)
        .map(|i| {
            let mut v = vec![Int::ZERO; dim];
            v[i] = Int::ONE;
            v
        })
        .collect();
    for e in equalities {
        let _ = split_off_lineality(&mut lin, e);
    }
    let space_dim = lin.len();

    let order = insertion_order(inequalities);
    let m = inequalities.len();
    let mut rays: Vec<Ray> = Vec::new();

    for (step, &ri) in order.iter().enumerate() {
        let row = &inequalities[ri];
        if let Some((l0, a0)) = split_off_lineality(&mut lin, row) {
            for ray in rays.iter_mut() {
                let val = dot(row, &ray.v);
                if !val.is_zero() {
                    ray.v = combine(&a0, &ray.v, &val, &l0);
                }
                ray.zeros.set(step);
            }
            let mut zeros = Bits::new(m);
            for s in 0..step {
                zeros.set(s);
            }
            let mut v = l0;
            make_primitive(&mut v);
            rays.push(Ray { v, zeros });
            continue;
        }

        let vals: Vec<Int> = rays.par_iter().map(|r| dot(row, &r.v)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (ray, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    ray.zeros.set(step);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();

        let pointed_dim = space_dim - lin.len();
        let min_common = pointed_dim.saturating_sub(2);
        let current = &rays;
        let vals_ref = &vals;
        let neg_ref = &neg;
        let new_rays: Vec<Ray> = pos
            .par_iter()
            .flat_map_iter(|&p| {
                let rp = &current[p];
                let vp = &vals_ref[p];
                neg_ref.iter().filter_map(move |&n| {
                    let rn = &current[n];
                    let common = rp.zeros.and(&rn.zeros);
                    if common.count() < min_common {
                        return None;
                    }
                    let blocked = current.iter().enumerate().any(|(k, other)| {
                        k != p && k != n && common.is_subset_of(&other.zeros)
                    });
                    if blocked {
                        return None;
                    }
                    // vp > 0 > vn: vp * rn - vn * rp has value zero on `row`
                    let v = combine(vp, &rn.v, &vals_ref[n], &rp.v);
                    let mut zeros = common;
                    zeros.set(step);
                    Some(Ray { v, zeros })
                })
            })
            .collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                ray.zeros.set(step);
            }
            next.push(ray);
        }
        next.extend(new_rays);
        rays = next;
    }

    let mut out_rays: Vec<IntVec> = rays.into_iter().map(|r| r.v).collect();
    out_rays.sort();
    out_rays.dedup();
    for l in lin.iter_mut() {
        make_canonical_line(l);
    }
    DdOutput {
        rays: out_rays,
        lineality: lin,
    }
}
