use std::fs;
use std::path::Path;

use densdel::oracle::{graph_oracle, hypergraph_oracle, pmean_oracle, CfBound, Oracle};
use densdel::{Cost, Error, Hypergraph, MultiGraph};

use crate::{CliError, Objective};

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// An instance file read under a chosen objective.
pub struct Instance {
    pub objective: Objective,
    /// Present for the graph and p-mean objectives.
    pub graph: Option<MultiGraph>,
    pub oracle: Oracle,
    pub costs: Vec<Cost>,
}

impl Instance {
    pub fn load(path: &Path, objective: Objective) -> Result<Self, CliError> {
        let text = read(path)?;
        Ok(match objective {
            Objective::Graph => {
                let g = MultiGraph::parse(&text)?;
                Instance {
                    objective,
                    oracle: graph_oracle(&g),
                    costs: g.costs().to_vec(),
                    graph: Some(g),
                }
            }
            Objective::Hypergraph => {
                let h = Hypergraph::parse(&text)?;
                Instance {
                    objective,
                    oracle: hypergraph_oracle(&h),
                    costs: h.costs().to_vec(),
                    graph: None,
                }
            }
            Objective::Pmean(p) => {
                let g = MultiGraph::parse(&text)?;
                Instance {
                    objective,
                    oracle: pmean_oracle(&g, p)?,
                    costs: g.costs().to_vec(),
                    graph: Some(g),
                }
            }
        })
    }

    pub fn size(&self) -> usize {
        self.oracle.universe()
    }

    /// Plain graph, only under the graph objective.
    pub fn plain_graph(&self) -> Result<&MultiGraph, CliError> {
        match (&self.objective, &self.graph) {
            (Objective::Graph, Some(g)) => Ok(g),
            _ => Err(Error::UnsupportedInstance("this algorithm needs --objective graph".into()).into()),
        }
    }

    pub fn cf(&self) -> CfBound {
        CfBound::of(self.oracle.as_ref()).expect("shipped oracle families carry a c_f bound")
    }
}
