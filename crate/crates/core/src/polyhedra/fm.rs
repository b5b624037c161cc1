//! Fourier–Motzkin elimination with Chernikov's ancestry rule.

use std::collections::HashMap;

use rayon::prelude::*;

use super::bits::Bits;
use super::{check_keep, remove_redundancies, HRep};
use crate::arith::{canonical_row_space, combine, is_zero_vec, make_canonical_line, IntVec};
use crate::error::Result;

#[derive(Clone)]
struct Row {
    v: IntVec,
    ancestors: Bits,
}

/// Projects `h` onto the coordinates not listed in `eliminate`. The result
/// keeps the remaining coordinates in their original order and is passed
/// through [`remove_redundancies`].
pub fn fm_eliminate(h: &HRep, eliminate: &[usize]) -> Result<HRep> {
    let mut drop = vec![false; h.dim];
    for &c in eliminate {
        if c < h.dim {
            drop[c] = true;
        }
    }
    let keep: Vec<usize> = (0..h.dim).filter(|&i| !drop[i]).collect();
    check_keep(h.dim, &keep)?;
    if eliminate.iter().any(|&c| c >= h.dim) {
        return crate::error::invalid("coordinate out of range");
    }

    let mut eqs: Vec<IntVec> = h.equalities.clone();
    let m = h.inequalities.len();
    let mut rows: Vec<Row> = h
        .inequalities
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut anc = Bits::new(m);
            anc.set(i);
            Row {
                v: v.clone(),
                ancestors: anc,
            }
        })
        .collect();

    // Equalities first: substitute out every coordinate they can reach.
    let mut pending: Vec<usize> = Vec::new();
    for c in (0..h.dim).filter(|&i| drop[i]) {
        let Some(pi) = eqs.iter().position(|e| !e[c].is_zero()) else {
            pending.push(c);
            continue;
        };
        let mut pivot = eqs.remove(pi);
        if pivot[c].is_negative() {
            pivot = pivot.iter().map(|x| -x).collect();
        }
        let lead = pivot[c].clone();
        for e in eqs.iter_mut() {
            if !e[c].is_zero() {
                let coef = e[c].clone();
                *e = combine(&lead, e, &coef, &pivot);
            }
        }
        for r in rows.iter_mut() {
            if !r.v[c].is_zero() {
                let coef = r.v[c].clone();
                r.v = combine(&lead, &r.v, &coef, &pivot);
            }
        }
    }
    eqs.retain(|e| !is_zero_vec(e));
    let eq_basis = canonical_row_space(&eqs);
    rows = dedup_rows(rows, &eq_basis);

    let mut step = 0usize;
    while !pending.is_empty() {
        // eliminate the coordinate producing the fewest new rows
        let (pi, _) = pending
            .iter()
            .enumerate()
            .map(|(pi, &c)| {
                let p = rows.iter().filter(|r| r.v[c].is_positive()).count() as i64;
                let n = rows.iter().filter(|r| r.v[c].is_negative()).count() as i64;
                (pi, p * n - p - n)
            })
            .min_by_key(|&(pi, cost)| (cost, pi))
            .unwrap();
        let c = pending.remove(pi);
        step += 1;

        let (pos, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r.v[c].is_positive());
        let (neg, zero): (Vec<Row>, Vec<Row>) = rest.into_iter().partition(|r| r.v[c].is_negative());
        let limit = step + 1;
        let combos: Vec<Row> = pos
            .par_iter()
            .flat_map_iter(|p| {
                neg.iter().filter_map(move |n| {
                    let anc = p.ancestors.or(&n.ancestors);
                    if anc.count() > limit {
                        return None;
                    }
                    let a = p.v[c].clone();
                    let b = n.v[c].clone();
                    // a > 0 > b: a * n - b * p cancels coordinate c
                    let v = combine(&a, &n.v, &b, &p.v);
                    Some(Row { v, ancestors: anc })
                })
            })
            .collect();
        rows = zero;
        rows.extend(combos);
        rows = dedup_rows(rows, &eq_basis);
    }

    let project = |v: &IntVec| -> IntVec { keep.iter().map(|&k| v[k].clone()).collect() };
    let inequalities: Vec<IntVec> = rows.iter().map(|r| project(&r.v)).collect();
    let mut equalities: Vec<IntVec> = eqs.iter().map(project).collect();
    for e in equalities.iter_mut() {
        make_canonical_line(e);
    }
    let projected = HRep::new(keep.len(), equalities, inequalities)?;
    Ok(remove_redundancies(&projected))
}

/// Drops zero rows and rows that coincide modulo the equality space,
/// keeping the copy with the fewest ancestors. Output is sorted.
fn dedup_rows(rows: Vec<Row>, eq_basis: &[IntVec]) -> Vec<Row> {
    let mut best: HashMap<IntVec, Row> = HashMap::new();
    for mut r in rows {
        r.v = super::reduce_modulo(&r.v, eq_basis);
        if is_zero_vec(&r.v) {
            continue;
        }
        match best.get(&r.v) {
            Some(old) if old.ancestors.count() <= r.ancestors.count() => {}
            _ => {
                best.insert(r.v.clone(), r);
            }
        }
    }
    let mut out: Vec<Row> = best.into_values().collect();
    out.sort_by(|a, b| a.v.cmp(&b.v));
    out
}
