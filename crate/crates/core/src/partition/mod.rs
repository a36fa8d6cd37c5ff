//! Exact evaluation of partition functions.
//!
//! `Z(G, A, ν) = Σ_φ Π_u ν(φ(u)) Π_{uv} a_{φ(u)φ(v)}` is computed either by
//! backtracking over colourings in a connectivity-first vertex order, pruning
//! any partial colouring whose weight is already zero, or by a frontier sweep
//! along the same order, whichever is estimated to touch fewer states. Exact
//! models are scaled to integer matrices and summed in `u128`, falling back
//! to big integers on overflow.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::models::SpinModel;
use crate::scalar::{common_denominator, Scalar, Weight};

mod counts;
mod frontier;
mod random_cluster;

pub use counts::{eval_independence, independent_set_counts, matching_counts, CountVector, MAX_COUNT_SIZE};
pub use random_cluster::{
    edge_probabilities, fkg_check, potts_lower_bounds, random_cluster, random_cluster_with, tutte_value,
    FkgReport, RCParams,
};

/// Work limits shared by the evaluation engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest estimated work ([`evaluation_cost`]) accepted by
    /// [`partition_value`].
    pub assignments: u128,
    /// Largest number of deletion–contraction nodes.
    pub expansions: u64,
    /// Largest number of signings visited exhaustively.
    pub signings: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            assignments: 100_000_000,
            expansions: 10_000_000,
            signings: crate::graph::DEFAULT_SIGNING_CAP,
        }
    }
}

/// Vertex order plus, for each position, the earlier positions it is joined
/// to (with multiplicity) and its number of loops.
struct Plan {
    back: Vec<Vec<(usize, u32)>>,
    loops: Vec<u32>,
}

impl Plan {
    fn new(g: &Graph) -> Plan {
        let n = g.n();
        let adj = g.incidence();
        let mut pos = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut placed_nbrs = vec![0usize; n];
        let deg = g.degrees();
        while order.len() < n {
            // most already-placed neighbours first, then highest degree, then index
            let next = (0..n)
                .filter(|&u| pos[u] == usize::MAX)
                .max_by_key(|&u| (placed_nbrs[u], deg[u], std::cmp::Reverse(u)))
                .unwrap();
            pos[next] = order.len();
            order.push(next);
            for &(w, _) in &adj[next] {
                placed_nbrs[w] += 1;
            }
        }
        let mut back: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        let mut loops = vec![0u32; n];
        for &(u, v) in g.edges() {
            if u == v {
                loops[pos[u]] += 1;
                continue;
            }
            let (early, late) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
            match back[late].iter_mut().find(|(p, _)| *p == early) {
                Some(entry) => entry.1 += 1,
                None => back[late].push((early, 1)),
            }
        }
        Plan { back, loops }
    }
}

fn descend<W: Weight>(plan: &Plan, q: usize, a: &[W], nu: &[W], colors: &mut [usize], depth: usize, acc: W) -> Option<W> {
    if depth == colors.len() {
        return Some(acc);
    }
    let mut total = W::zero();
    'color: for c in 0..q {
        let mut w = acc.checked_mul(&nu[c])?;
        if plan.loops[depth] > 0 {
            w = w.checked_mul(&a[c * q + c].checked_pow(plan.loops[depth])?)?;
        }
        for &(p, mult) in &plan.back[depth] {
            if w.is_zero() {
                continue 'color;
            }
            let f = &a[c * q + colors[p]];
            w = if mult == 1 { w.checked_mul(f)? } else { w.checked_mul(&f.checked_pow(mult)?)? };
        }
        if w.is_zero() {
            continue;
        }
        colors[depth] = c;
        let sub = descend(plan, q, a, nu, colors, depth + 1, w)?;
        total = total.checked_add(&sub)?;
    }
    Some(total)
}

/// The sweep is preferred once it is estimated to be this many times cheaper,
/// since backtracking also profits from zero pruning.
const SWEEP_ADVANTAGE: u128 = 4;

fn use_sweep(plan: &Plan, g: &Graph, q: usize) -> bool {
    frontier::sweep_cost(plan, q).saturating_mul(SWEEP_ADVANTAGE) < assignment_count(g, q)
}

/// Estimated number of states [`partition_value`] visits for `q` spins.
pub fn evaluation_cost(g: &Graph, q: usize) -> u128 {
    let plan = Plan::new(g);
    if use_sweep(&plan, g, q) {
        frontier::sweep_cost(&plan, q)
    } else {
        assignment_count(g, q)
    }
}

/// `None` on overflow.
fn sum_colourings<W: Weight>(g: &Graph, q: usize, a: &[W], nu: &[W]) -> Option<W> {
    if g.n() == 0 {
        return Some(W::one());
    }
    let plan = Plan::new(g);
    if use_sweep(&plan, g, q) {
        frontier::sweep(&plan, q, a, nu)
    } else {
        backtrack(&plan, q, a, nu)
    }
}

/// Sums over all colourings. The first vertex's colours are split across
/// threads and merged in colour order.
fn backtrack<W: Weight>(plan: &Plan, q: usize, a: &[W], nu: &[W]) -> Option<W> {
    let n = plan.back.len();
    let parts: Vec<Option<W>> = (0..q)
        .into_par_iter()
        .map(|c| {
            let mut w = nu[c].clone();
            if plan.loops[0] > 0 {
                w = w.checked_mul(&a[c * q + c].checked_pow(plan.loops[0])?)?;
            }
            if w.is_zero() {
                return Some(W::zero());
            }
            let mut colors = vec![0usize; n];
            colors[0] = c;
            descend(plan, q, a, nu, &mut colors, 1, w)
        })
        .collect();
    parts
        .into_iter()
        .try_fold(W::zero(), |acc, p| acc.checked_add(&p?))
}

fn to_biguint(x: &BigInt) -> BigUint {
    x.to_biguint().expect("nonnegative entries")
}

/// Number of colourings `q^v`, saturating.
pub fn assignment_count(g: &Graph, q: usize) -> u128 {
    (q as u128).checked_pow(g.n() as u32).unwrap_or(u128::MAX)
}

/// `Z(G, A, ν)`, exact for exact models.
pub fn partition_value(g: &Graph, m: &SpinModel, caps: &Caps) -> Result<Scalar> {
    let q = m.q();
    let required = evaluation_cost(g, q);
    if required > caps.assignments {
        return Err(Error::CapExceeded { what: "partition function", required, cap: caps.assignments });
    }
    if !m.is_exact() {
        let z = sum_colourings(g, q, &m.matrix_f64(), &m.weights_f64()).expect("f64 never overflows");
        return Ok(Scalar::Float(z));
    }
    let ra: Vec<&BigRational> = m.matrix().iter().map(|x| x.as_exact().unwrap()).collect();
    let rn: Vec<&BigRational> = m.weights().iter().map(|x| x.as_exact().unwrap()).collect();
    let da = common_denominator(ra.iter().copied());
    let dn = common_denominator(rn.iter().copied());
    let scale = |xs: &[&BigRational], d: &BigInt| -> Vec<BigUint> {
        xs.iter().map(|r| to_biguint(&(r.numer() * (d / r.denom())))).collect()
    };
    let (ia, inu) = (scale(&ra, &da), scale(&rn, &dn));
    let small = |xs: &[BigUint]| xs.iter().map(|x| x.to_u128()).collect::<Option<Vec<u128>>>();
    let fast = match (small(&ia), small(&inu)) {
        (Some(a), Some(nu)) => sum_colourings(g, q, &a, &nu).map(BigUint::from),
        _ => None,
    };
    let total = match fast {
        Some(z) => z,
        None => sum_colourings(g, q, &ia, &inu).expect("big integers never overflow"),
    };
    let denom = num_traits::pow(da, g.m()) * num_traits::pow(dn, g.n());
    Ok(Scalar::Exact(BigRational::new(BigInt::from_biguint(Sign::Plus, total), denom)))
}

/// `hom(G, H)`: number of homomorphisms into the multigraph `h`, counting
/// parallel target edges with multiplicity.
pub fn hom(g: &Graph, h: &Graph, caps: &Caps) -> Result<BigUint> {
    let z = partition_value(g, &SpinModel::adjacency(h), caps)?;
    let r = z.as_exact().expect("adjacency models are exact");
    debug_assert!(r.is_integer());
    Ok(to_biguint(&r.to_integer()))
}

/// `trace((diag(ν)·A)ⁿ)`, which equals `Z(C_n, A, ν)`.
pub fn hom_cycle_oracle(n: usize, m: &SpinModel) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("cycle length must be at least 1".into()));
    }
    let q = m.q();
    let base: Vec<Scalar> = (0..q * q).map(|k| m.nu(k / q) * m.a(k / q, k % q)).collect();
    let mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                let mut s = x[0].zero_like();
                for k in 0..q {
                    s = &s + &(&x[i * q + k] * &y[k * q + j]);
                }
                out.push(s);
            }
        }
        out
    };
    let mut power = base.clone();
    for _ in 1..n {
        power = mul(&power, &base);
    }
    Ok((0..q).fold(power[0].zero_like(), |s, i| &s + &power[i * q + i]))
}

/// `q^v · ((q−1)/q)^e`, the lower bound for proper `q`-colourings of a
/// bipartite graph.
pub fn coloring_lower_bound(g: &Graph, q: u64) -> Scalar {
    let q = BigInt::from(q);
    let ratio = BigRational::new(&q - BigInt::one(), q.clone());
    Scalar::Exact(BigRational::from_integer(num_traits::pow(q, g.n())) * num_traits::pow(ratio, g.m()))
}
