//! Seeded random graph generators.

use crate::error::{Error, Result};
use crate::rng::SeededRng;

use super::{Graph, Signing};

const MAX_ATTEMPTS: usize = 10_000;

/// Uniform simple d-regular graph on `n` vertices by the configuration model,
/// rejecting pairings with loops or parallel edges.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n * d % 2 == 1 || d >= n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, d)).collect();
    for _ in 0..MAX_ATTEMPTS {
        rng.shuffle(&mut stubs);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_parts(n, edges);
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::NoConvergence(format!(
        "configuration model found no simple {d}-regular graph on {n} vertices in {MAX_ATTEMPTS} attempts"
    )))
}

/// Simple d-regular bipartite graph with `side` vertices per class (left side
/// `0..side`), from a random pairing of left and right stubs.
pub fn random_bipartite_regular(side: usize, d: usize, seed: u64) -> Result<Graph> {
    if d > side {
        return Err(Error::InvalidArgument(format!(
            "no simple {d}-regular bipartite graph with sides of {side}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut right: Vec<usize> = (0..side).flat_map(|v| std::iter::repeat_n(side + v, d)).collect();
    for _ in 0..MAX_ATTEMPTS {
        rng.shuffle(&mut right);
        let edges: Vec<(usize, usize)> = right
            .iter()
            .enumerate()
            .map(|(i, &v)| (i / d, v))
            .collect();
        let g = Graph::from_parts(2 * side, edges);
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::NoConvergence(format!(
        "no simple bipartite {d}-regular pairing with side {side} in {MAX_ATTEMPTS} attempts"
    )))
}

/// Multigraph with `m` edges whose endpoints are independent uniform
/// vertices (loops and parallel edges allowed).
pub fn random_multigraph(n: usize, m: usize, seed: u64) -> Graph {
    assert!(n > 0);
    let mut rng = SeededRng::new(seed);
    let edges = (0..m)
        .map(|_| (rng.below(n as u64) as usize, rng.below(n as u64) as usize))
        .collect();
    Graph::from_parts(n, edges)
}

/// Uniform random signing.
pub fn random_signing<'g>(g: &'g Graph, rng: &mut SeededRng) -> Signing<'g> {
    let signs = (0..g.m()).map(|_| if rng.coin() { -1 } else { 1 }).collect();
    Signing::new(g, signs).expect("valid signing")
}

/// One uniform permutation of `0..k` per edge.
pub fn random_permutations(g: &Graph, k: usize, rng: &mut SeededRng) -> Vec<Vec<usize>> {
    (0..g.m()).map(|_| rng.permutation(k)).collect()
}
