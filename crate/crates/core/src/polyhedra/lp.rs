//! Exact phase-one simplex, used only to produce redundancy certificates.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Finds `lambda >= 0` with `columns * lambda = target`, or `None` if the
/// system is infeasible. `columns[j]` is the j-th column. Bland's rule
/// guarantees termination.
pub(crate) fn nonnegative_solution(
    columns: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<Vec<BigRational>> {
    let m = target.len();
    let k = columns.len();
    // tableau rows: [A | I (artificials) | b], with b >= 0
    let width = k + m + 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for (j, col) in columns.iter().enumerate() {
            row[j] = if flip { -col[i].clone() } else { col[i].clone() };
        }
        row[k + i] = BigRational::from_integer(1.into());
        row[width - 1] = if flip {
            -target[i].clone()
        } else {
            target[i].clone()
        };
        tab.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    // objective: minimise the sum of artificials; reduced costs = -(sum of rows) on non-artificials
    loop {
        let mut entering = None;
        for j in 0..k + m {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = if j >= k {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            };
            for (i, row) in tab.iter().enumerate() {
                if basis[i] >= k {
                    reduced -= &row[j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[width - 1] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let piv = tab[pr][e].clone();
        for x in tab[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = e;
    }

    for (i, row) in tab.iter().enumerate() {
        if basis[i] >= k && !row[width - 1].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); k];
    for (i, row) in tab.iter().enumerate() {
        if basis[i] < k {
            sol[basis[i]] = row[width - 1].clone();
        }
    }
    Some(sol)
}
