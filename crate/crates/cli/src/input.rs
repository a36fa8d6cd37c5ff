use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::Args;
use twolift_core::verify::named_graph;
use twolift_core::{Graph, NamedModel, SpinModel};

/// A graph given either as a file or as a catalog id.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct GraphArg {
    /// Edge-list or JSON graph file.
    #[arg(long)]
    pub graph: Option<String>,
    /// Catalog id such as `K4`, `C5`, `K3,3`, `petersen` or `rr:10:3:1`.
    #[arg(long)]
    pub named: Option<String>,
}

impl GraphArg {
    pub fn load(&self) -> Result<(String, Graph)> {
        match (&self.graph, &self.named) {
            (Some(path), _) => {
                let text = read(path)?;
                let g = Graph::parse_any(&text).with_context(|| format!("parsing graph {path}"))?;
                Ok((path.clone(), g))
            }
            (None, Some(id)) => Ok((id.clone(), named_graph(id)?)),
            (None, None) => unreachable!("clap requires one of --graph and --named"),
        }
    }
}

pub fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// A model file (JSON) or a named model: `ind[:λ]`, `wr`, `ising:β[:B]`,
/// `potts:q:w`. Arguments that look like paths are always read as files.
pub fn load_model(spec: &str) -> Result<SpinModel> {
    let looks_like_file = spec.ends_with(".json") || spec.contains('/') || Path::new(spec).is_file();
    if looks_like_file {
        let text = read(spec)?;
        return SpinModel::from_json(&text).with_context(|| format!("parsing model {spec}"));
    }
    let named: NamedModel = spec.parse()?;
    Ok(named.build()?)
}
