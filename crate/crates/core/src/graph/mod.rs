//! Finite undirected multigraphs.
//!
//! Loops and parallel edges are allowed everywhere: deletion–contraction
//! produces them, and lifts of graphs with loops need them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod boost;
mod lift;
pub mod named;
pub mod random;
mod transform;

pub use boost::{girth_boost, BoostStatus, GirthBoost, GirthBoostConfig};
pub use lift::{
    apply_lift, enumerate_signings, k_lift, signing_count, Signing, SigningIter,
    DEFAULT_SIGNING_CAP,
};
pub use transform::{add_loops, disjoint_union, subdivision, tensor_product, times_k2};

/// An undirected multigraph on vertices `0..n`. Edges keep their insertion
/// order and are addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Side of a vertex in a 2-colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Bipartition {
    Present(Vec<Side>),
    Absent,
}

impl Bipartition {
    pub fn is_present(&self) -> bool {
        matches!(self, Bipartition::Present(_))
    }
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some((i, &(u, v))) = edges.iter().enumerate().find(|(_, &(u, v))| u >= n || v >= n) {
            return Err(Error::InvalidArgument(format!(
                "edge {i} = ({u},{v}) has an endpoint >= n = {n}"
            )));
        }
        Ok(Graph { n, edges })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub(crate) fn from_parts(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n));
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Degrees, a loop counting twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let d = *deg.first()?;
        deg.iter().all(|&x| x == d).then_some(d)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    /// Neighbour lists carrying edge indices; a loop appears once.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            if u != v {
                adj[v].push((u, i));
            }
        }
        adj
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.incidence();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `G - e`: removes edge `i`; later edges shift down by one.
    pub fn delete_edge(&self, i: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Graph { n: self.n, edges }
    }

    /// `G / e`: merges the endpoints of edge `i` and removes it. The merged
    /// vertex keeps the smaller label, the larger label is filled by the
    /// last vertex. Contracting a loop only deletes it. Other edges keep
    /// their relative order, so parallel copies of `e` become loops.
    pub fn contract_edge(&self, i: usize) -> Graph {
        let (a, b) = self.edges[i];
        if a == b {
            return self.delete_edge(i);
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let last = self.n - 1;
        let relabel = |x: usize| {
            if x == gone {
                keep
            } else if x == last {
                gone
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Graph { n: self.n - 1, edges }
    }

    /// Bipartition by BFS 2-colouring; any loop or odd cycle gives `Absent`.
    pub fn bipartition(&self) -> Bipartition {
        let adj = self.incidence();
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(Side::L);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                let other = if su == Side::L { Side::R } else { Side::L };
                for &(w, _) in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(other);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return Bipartition::Absent,
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Present(side.into_iter().map(Option::unwrap).collect())
    }

    /// Length of the shortest cycle, `None` for forests. A loop is a cycle of
    /// length 1 and a pair of parallel edges one of length 2.
    pub fn girth(&self) -> Option<usize> {
        if self.edges.iter().any(|(u, v)| u == v) {
            return Some(1);
        }
        let adj = self.incidence();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            via[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                // nothing shorter can appear below this depth
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &(w, e) in &adj[u] {
                    if e == via[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = e;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Parses the edge-list text format: a header `n m`, then `m` lines
    /// `u v`. Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let [u, v] = parse_pair(line, text)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("endpoint out of range: ({u},{v}) with n = {n}"),
                });
            }
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Ok(Graph { n, edges })
    }

    pub fn parse_json(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    /// Edge-list or JSON, decided by the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::parse_json(text)
        } else {
            Graph::parse_edge_list(text)
        }
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, got {text:?}"),
        });
    }
    let mut out = [0usize; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        let v: i64 = f.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not an integer: {f:?}"),
        })?;
        if v < 0 {
            return Err(Error::Parse {
                line,
                msg: format!("negative value {v}"),
            });
        }
        *slot = v as usize;
    }
    Ok(out)
}
