//! Sweep evaluation: vertices are added in plan order while a table holds
//! the weight of every colouring of the frontier, the placed vertices that
//! still have unplaced neighbours. The work is `Σ q^{|frontier|+1}` instead
//! of `q^v`, which is what makes sparse graphs with many vertices cheap.

use rayon::prelude::*;

use super::Plan;
use crate::scalar::Weight;

/// Frontier size after each vertex is placed (before retiring).
fn widths(plan: &Plan) -> Vec<usize> {
    let n = plan.back.len();
    let mut later = later_counts(plan);
    let mut active = 0usize;
    let mut out = Vec::with_capacity(n);
    for d in 0..n {
        active += 1;
        out.push(active);
        for &(p, _) in &plan.back[d] {
            later[p] -= 1;
            if later[p] == 0 {
                active -= 1;
            }
        }
        if later[d] == 0 {
            active -= 1;
        }
    }
    out
}

fn later_counts(plan: &Plan) -> Vec<usize> {
    let mut later = vec![0usize; plan.back.len()];
    for back in &plan.back {
        for &(p, _) in back {
            later[p] += 1;
        }
    }
    later
}

/// Table entries touched by [`sweep`], saturating.
pub(super) fn sweep_cost(plan: &Plan, q: usize) -> u128 {
    widths(plan)
        .iter()
        .map(|&w| (q as u128).checked_pow(w as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b))
}

const PARALLEL_TABLE: usize = 1 << 12;

/// `None` on overflow of `W`.
pub(super) fn sweep<W: Weight>(plan: &Plan, q: usize, a: &[W], nu: &[W]) -> Option<W> {
    let n = plan.back.len();
    let mut later = later_counts(plan);
    // frontier[k] is the plan position held by digit k (base q, least significant first)
    let mut frontier: Vec<usize> = Vec::new();
    let mut table: Vec<W> = vec![W::one()];
    for d in 0..n {
        let stride = q.pow(frontier.len() as u32);
        let digits: Vec<(usize, u32)> = plan.back[d]
            .iter()
            .map(|&(p, mult)| {
                let k = frontier.iter().position(|&x| x == p).expect("earlier neighbours are on the frontier");
                (q.pow(k as u32), mult)
            })
            .collect();
        let mut local = Vec::with_capacity(q);
        for c in 0..q {
            local.push(nu[c].checked_mul(&a[c * q + c].checked_pow(plan.loops[d])?)?);
        }
        let extend = |idx: usize| -> Option<W> {
            let (code, c) = (idx % stride, idx / stride);
            let mut w = table[code].clone();
            if w.is_zero() || local[c].is_zero() {
                return Some(W::zero());
            }
            w = w.checked_mul(&local[c])?;
            for &(place, mult) in &digits {
                let other = code / place % q;
                w = w.checked_mul(&a[c * q + other].checked_pow(mult)?)?;
                if w.is_zero() {
                    break;
                }
            }
            Some(w)
        };
        let size = stride * q;
        table = if size >= PARALLEL_TABLE {
            (0..size).into_par_iter().map(extend).collect::<Option<Vec<W>>>()?
        } else {
            (0..size).map(extend).collect::<Option<Vec<W>>>()?
        };
        frontier.push(d);
        let mut done: Vec<usize> = Vec::new();
        for &(p, _) in &plan.back[d] {
            later[p] -= 1;
            if later[p] == 0 {
                done.push(p);
            }
        }
        if later[d] == 0 {
            done.push(d);
        }
        for p in done {
            let k = frontier.iter().position(|&x| x == p).expect("on the frontier");
            table = sum_out(&table, q, k)?;
            frontier.remove(k);
        }
    }
    debug_assert_eq!(table.len(), 1);
    table.pop()
}

/// Sums the table over digit `k`.
fn sum_out<W: Weight>(table: &[W], q: usize, k: usize) -> Option<Vec<W>> {
    let low = q.pow(k as u32);
    let out_len = table.len() / q;
    let entry = |idx: usize| -> Option<W> {
        let (lo, hi) = (idx % low, idx / low);
        let base = lo + hi * low * q;
        let mut s = W::zero();
        for c in 0..q {
            s = s.checked_add(&table[base + c * low])?;
        }
        Some(s)
    };
    if out_len >= PARALLEL_TABLE {
        (0..out_len).into_par_iter().map(entry).collect()
    } else {
        (0..out_len).map(entry).collect()
    }
}
