//! Graph JSON (`{"vertices": m, "edges": [[u, v], ...]}`, loops as `[u, u]`)
//! and DOT export/import.

use serde::{Deserialize, Serialize};

use super::multigraph::MultiGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&MultiGraph> for GraphJson {
    fn from(g: &MultiGraph) -> Self {
        GraphJson { vertices: g.vertex_count(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl GraphJson {
    pub fn into_graph(self) -> Result<MultiGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        MultiGraph::from_edges(self.vertices, &edges)
    }
}

pub fn to_json(g: &MultiGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON serialization")
}

pub fn from_json(s: &str) -> Result<MultiGraph> {
    serde_json::from_str::<GraphJson>(s)?.into_graph()
}

pub fn to_dot(g: &MultiGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Reads the DOT subset written by [`to_dot`]: numeric vertex statements
/// and `u -- v` edge statements.
pub fn from_dot(s: &str) -> Result<MultiGraph> {
    let body = s
        .trim()
        .strip_prefix("graph")
        .and_then(|r| r.trim_start().split_once('{'))
        .and_then(|(_, r)| r.trim_end().strip_suffix('}'))
        .ok_or_else(|| Error::Parse("expected `graph <name> { ... }`".into()))?;
    let mut vertices = 0usize;
    let mut edges = Vec::new();
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex id `{}`", t.trim())));
    for stmt in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = stmt.split_once("--") {
            let (u, v) = (parse(a)?, parse(b)?);
            vertices = vertices.max(u + 1).max(v + 1);
            edges.push((u, v));
        } else {
            vertices = vertices.max(parse(stmt)? + 1);
        }
    }
    MultiGraph::from_edges(vertices, &edges)
}
