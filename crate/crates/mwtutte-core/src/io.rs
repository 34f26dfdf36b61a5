//! JSON file formats for graphs, with diagnostics that name the offending
//! field so CLI users can fix inputs quickly.
//!
//! Bipartite graph: `{"a_size": 2, "b_size": 2, "edges": [[0, 2], [1, 3]]}`
//! where the first endpoint is an A-index and the second an absolute
//! B-index (`>= a_size`).
//!
//! Multigraph: `{"vertices": 4, "edges": [[0, 1], [1, 2]]}`; edge labels
//! are assigned `1..m` in list order; loops and parallel edges allowed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{BipartiteGraph, MultiGraph};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteFile {
    a_size: usize,
    b_size: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiGraphFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let file: BipartiteFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("bipartite graph JSON: {e}")))?;
    BipartiteGraph::new(file.a_size, file.b_size, &file.edges)
}

pub fn read_bipartite(path: &str) -> Result<BipartiteGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    parse_bipartite(&text)
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let file = BipartiteFile {
        a_size: g.a_size(),
        b_size: g.b_size(),
        edges: g.edges(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

pub fn parse_multigraph(text: &str) -> Result<MultiGraph> {
    let file: MultiGraphFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("multigraph JSON: {e}")))?;
    MultiGraph::new(file.vertices, &file.edges)
}

pub fn read_multigraph(path: &str) -> Result<MultiGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    parse_multigraph(&text)
}

pub fn write_multigraph(g: &MultiGraph) -> String {
    let file = MultiGraphFile {
        vertices: g.vertex_count(),
        edges: g.edges().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}
