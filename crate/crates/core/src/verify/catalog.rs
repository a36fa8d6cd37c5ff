use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::named::{complete, complete_bipartite, cycle, heawood, path, petersen};
use crate::graph::random::{random_bipartite_regular, random_regular};
use crate::graph::Graph;

/// A named test graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub graph: Graph,
}

/// An ordered list of test graphs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Every named family plus two seeded random graphs.
    pub fn standard() -> Catalog {
        let ids = [
            "K2", "K3", "K4", "K5", "C4", "C5", "C6", "C8", "K2,2", "K3,3", "K4,4", "P3", "P4", "P5",
            "petersen", "heawood", "rr:8:3:1", "rb:4:3:1",
        ];
        Catalog::from_ids(ids).expect("standard ids parse")
    }

    /// The graphs with at most 12 edges, where exhaustive 2-lift scans are
    /// cheap.
    pub fn small() -> Catalog {
        Catalog { entries: Catalog::standard().entries.into_iter().filter(|e| e.graph.m() <= 12).collect() }
    }

    pub fn from_ids<'a>(ids: impl IntoIterator<Item = &'a str>) -> Result<Catalog> {
        let entries = ids
            .into_iter()
            .map(|id| Ok(CatalogEntry { id: id.to_string(), graph: named_graph(id)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { entries })
    }

    /// One graph id per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let graph = named_graph(line).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            entries.push(CatalogEntry { id: line.to_string(), graph });
        }
        Ok(Catalog { entries })
    }

    pub fn bipartite(&self) -> Catalog {
        Catalog { entries: self.entries.iter().filter(|e| e.graph.bipartition().is_present()).cloned().collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn number(s: &str, id: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidArgument(format!("bad number {s:?} in graph id {id:?}")))
}

/// Graph for an id: `Kn`, `Cn`, `Pn`, `Ka,b`, `petersen`, `heawood`,
/// `rr:n:d:seed` (random regular) or `rb:side:d:seed` (random bipartite
/// regular).
pub fn named_graph(id: &str) -> Result<Graph> {
    let lower = id.to_ascii_lowercase();
    match lower.as_str() {
        "petersen" => return Ok(petersen()),
        "heawood" => return Ok(heawood()),
        _ => {}
    }
    let fields: Vec<&str> = lower.split(':').collect();
    match fields.as_slice() {
        ["rr", n, d, seed] => return random_regular(number(n, id)?, number(d, id)?, number(seed, id)? as u64),
        ["rb", s, d, seed] => {
            return random_bipartite_regular(number(s, id)?, number(d, id)?, number(seed, id)? as u64)
        }
        _ => {}
    }
    let (head, rest) = lower.split_at(1.min(lower.len()));
    match head {
        "k" => match rest.split_once(',') {
            Some((a, b)) => Ok(complete_bipartite(number(a, id)?, number(b, id)?)),
            None => Ok(complete(number(rest, id)?)),
        },
        "c" => {
            let n = number(rest, id)?;
            if n == 0 {
                return Err(Error::InvalidArgument("C0 is not a cycle".into()));
            }
            Ok(cycle(n))
        }
        "p" => Ok(path(number(rest, id)?)),
        _ => Err(Error::InvalidArgument(format!("unknown graph id {id:?}"))),
    }
}
