//! Standard small graphs.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_parts(n, edges)
}

/// `C_n` for `n >= 3`; `n = 2` gives a parallel pair, `n = 1` a loop.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 1);
    Graph::from_parts(n, (0..n).map(|u| (u, (u + 1) % n)).collect())
}

/// Path with `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_parts(n, (1..n).map(|u| (u - 1, u)).collect())
}

/// `K_{a,b}`, left side `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a)
        .flat_map(|u| (0..b).map(move |v| (u, a + v)))
        .collect();
    Graph::from_parts(a + b, edges)
}

/// Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_parts(10, edges)
}

/// Heawood graph (incidence graph of the Fano plane), LCF `[5,-5]^7`.
pub fn heawood() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for i in (0..14).step_by(2) {
        edges.push((i, (i + 5) % 14));
    }
    Graph::from_parts(14, edges)
}
