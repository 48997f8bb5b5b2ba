//! Graph JSON (`cayley-net/1`) and Graphviz DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FamilyMeta, Graph};
use crate::groups::{compose, GeneratingSet};

pub const GRAPH_FORMAT: &str = "cayley-net/1";

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    format: String,
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_labels: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family_meta: Option<FamilyMeta>,
}

fn edge_key(u: usize, v: usize) -> String {
    format!("{u}-{v}")
}

/// Serializes a graph; edges sorted, keys in a fixed order.
pub fn graph_to_json(graph: &Graph) -> String {
    let doc = GraphJson {
        format: GRAPH_FORMAT.to_string(),
        n: graph.vertex_count(),
        edges: graph.edges().map(|(u, v)| [u, v]).collect(),
        vertex_labels: graph.vertex_labels().map(<[String]>::to_vec),
        edge_labels: graph.edge_labels().map(|labels| {
            labels
                .iter()
                .map(|(&(u, v), &s)| (edge_key(u, v), s))
                .collect()
        }),
        family_meta: graph.family_meta().cloned(),
    };
    serde_json::to_string_pretty(&doc).expect("graph JSON serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.format != GRAPH_FORMAT {
        return Err(Error::Parse(format!(
            "unsupported graph format `{}`",
            doc.format
        )));
    }
    let mut graph = Graph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
    if graph.edge_count() != doc.edges.len() {
        return Err(Error::InvalidGraph("repeated edges in graph JSON".into()));
    }
    if let Some(labels) = doc.vertex_labels {
        graph = graph.with_vertex_labels(labels)?;
    }
    if let Some(labels) = doc.edge_labels {
        let mut parsed = BTreeMap::new();
        for (key, s) in labels {
            let (u, v) = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad edge label key `{key}`")))?;
            parsed.insert((u.min(v), u.max(v)), s);
        }
        graph = graph.with_edge_labels(parsed)?;
    }
    if let Some(meta) = doc.family_meta {
        graph = graph.with_meta(meta);
    }
    Ok(graph)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT; vertices named by label when present.
pub fn graph_to_dot(graph: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.vertex_count() {
        let _ = writeln!(out, "  {v} [label={}];", quote(&graph.label(v)));
    }
    for (u, v) in graph.edges() {
        match graph.edge_labels().and_then(|l| l.get(&(u, v))) {
            Some(s) => {
                let _ = writeln!(out, "  {u} -- {v} [label=\"s{s}\"];");
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Cayley digraph with arcs `h → s·h` for a possibly asymmetric `S`.
/// Display only; analysis routines take undirected graphs.
pub fn cayley_digraph_dot(set: &GeneratingSet, closure_guard: usize) -> Result<String> {
    let elements = crate::groups::closure(set, closure_guard)?;
    let index: std::collections::HashMap<_, _> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut out = String::from("digraph G {\n");
    for (i, el) in elements.iter().enumerate() {
        let _ = writeln!(out, "  {i} [label={}];", quote(&el.to_string()));
    }
    for (i, el) in elements.iter().enumerate() {
        for (k, s) in set.elements().iter().enumerate() {
            let j = index[&compose(s, el)?];
            let _ = writeln!(out, "  {i} -> {j} [label=\"s{k}\"];");
        }
    }
    out.push_str("}\n");
    Ok(out)
}
