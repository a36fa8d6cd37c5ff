use super::Graph;

/// `G ∪ H`, vertices of `h` shifted by `v(g)`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(u, v)| (u + n, v + n)))
        .collect();
    Graph::from_parts(n + h.n(), edges)
}

/// Categorical product `G × H`; vertex `(u, v)` is `u + v·v(g)`.
///
/// Two non-loop edges contribute the pair `(u,v)~(u',v')` and `(u,v')~(u',v)`;
/// when either factor edge is a loop these coincide and a single edge is kept.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let n = g.n();
    let id = |u: usize, v: usize| u + v * n;
    let mut edges = Vec::new();
    for &(u, u2) in g.edges() {
        for &(v, v2) in h.edges() {
            edges.push((id(u, v), id(u2, v2)));
            if u != u2 && v != v2 {
                edges.push((id(u, v2), id(u2, v)));
            }
        }
    }
    Graph::from_parts(n * h.n(), edges)
}

/// `G × K₂`, which coincides with the all-crossing 2-lift.
pub fn times_k2(g: &Graph) -> Graph {
    tensor_product(g, &super::named::complete(2))
}

/// `G°`: one loop added at every vertex, after the existing edges.
pub fn add_loops(g: &Graph) -> Graph {
    let mut edges = g.edges().to_vec();
    edges.extend((0..g.n()).map(|u| (u, u)));
    Graph::from_parts(g.n(), edges)
}

/// `Sub(G)`: edge `e = (u, v)` becomes the path `u – (n+e) – v`.
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, &(u, v))| [(u, n + e), (n + e, v)])
        .collect();
    Graph::from_parts(n + g.m(), edges)
}
