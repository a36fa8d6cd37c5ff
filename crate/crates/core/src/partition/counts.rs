use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Largest vertex count (independent sets) or edge count (matchings) the
/// exhaustive counters accept.
pub const MAX_COUNT_SIZE: usize = 30;

/// Coefficients `c_0, c_1, …` of a counting polynomial; `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVector(pub Vec<u64>);

impl CountVector {
    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    fn bump(&mut self, k: usize) {
        if self.0.len() <= k {
            self.0.resize(k + 1, 0);
        }
        self.0[k] += 1;
    }
}

/// `i_k(G)` for every `k`. A vertex with a loop is never independent.
pub fn independent_set_counts(g: &Graph) -> Result<CountVector> {
    let n = g.n();
    if n > MAX_COUNT_SIZE {
        return Err(Error::CapExceeded {
            what: "independent set enumeration",
            required: 1u128 << n,
            cap: 1u128 << MAX_COUNT_SIZE,
        });
    }
    let mut nbrs = vec![0u64; n];
    let mut looped = 0u64;
    for &(u, v) in g.edges() {
        if u == v {
            looped |= 1 << u;
        }
        nbrs[u] |= 1 << v;
        nbrs[v] |= 1 << u;
    }
    // walk the independent sets directly: `blocked` are vertices adjacent to
    // the chosen set, candidates are considered in increasing order
    fn walk(next: usize, n: usize, blocked: u64, size: usize, nbrs: &[u64], out: &mut CountVector) {
        out.bump(size);
        for v in next..n {
            if blocked >> v & 1 == 0 {
                walk(v + 1, n, blocked | nbrs[v] | 1 << v, size + 1, nbrs, out);
            }
        }
    }
    let mut out = CountVector(vec![]);
    walk(0, n, looped, 0, &nbrs, &mut out);
    Ok(out)
}

/// `I(G, λ) = Σ_k i_k λ^k`.
pub fn eval_independence(g: &Graph, lambda: &Scalar) -> Result<Scalar> {
    let counts = independent_set_counts(g)?;
    let mut acc = lambda.zero_like();
    for &c in counts.0.iter().rev() {
        let c = match lambda {
            Scalar::Exact(_) => Scalar::int(c as i64),
            Scalar::Float(_) => Scalar::float(c as f64),
        };
        acc = &(&acc * lambda) + &c;
    }
    Ok(acc)
}

/// `m_k(G)` for every `k`; loops never belong to a matching, parallel edges
/// give distinct matchings.
pub fn matching_counts(g: &Graph) -> Result<CountVector> {
    let m = g.m();
    if m > MAX_COUNT_SIZE {
        return Err(Error::CapExceeded {
            what: "matching enumeration",
            required: 1u128 << m,
            cap: 1u128 << MAX_COUNT_SIZE,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
    fn walk(next: usize, edges: &[(usize, usize)], used: &mut Vec<bool>, size: usize, out: &mut CountVector) {
        out.bump(size);
        for (i, &(u, v)) in edges.iter().enumerate().skip(next) {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                walk(i + 1, edges, used, size + 1, out);
                used[u] = false;
                used[v] = false;
            }
        }
    }
    let mut out = CountVector(vec![]);
    walk(0, &edges, &mut vec![false; g.n()], 0, &mut out);
    Ok(out)
}
