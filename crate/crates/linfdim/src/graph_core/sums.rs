use std::collections::BTreeSet;

use super::graph::{Graph, VertexId};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumKind {
    /// Identify one vertex.
    OneSum(String),
    /// Identify an edge and keep it.
    TwoSumKeep(String, String),
    /// Identify an edge and delete it.
    TwoSumDelete(String, String),
}

/// Clique sum of two graphs. Vertices are identified by id, so the operands
/// must share exactly the vertices named by `kind`.
pub fn graph_sum(g1: &Graph, g2: &Graph, kind: &SumKind) -> Result<Graph> {
    let shared: Vec<&str> = match kind {
        SumKind::OneSum(v) => vec![v],
        SumKind::TwoSumKeep(a, b) | SumKind::TwoSumDelete(a, b) => vec![a, b],
    };
    let common: BTreeSet<&str> = g1
        .names()
        .iter()
        .map(String::as_str)
        .filter(|v| g2.vertex(v).is_some())
        .collect();
    let wanted: BTreeSet<&str> = shared.iter().copied().collect();
    if common != wanted {
        return invalid(format!(
            "operands share {common:?} but the sum identifies {wanted:?}"
        ));
    }
    if shared.len() == 2 {
        let (a, b) = (shared[0], shared[1]);
        if g1.edge_by_names(a, b).is_none() || g2.edge_by_names(a, b).is_none() {
            return invalid(format!("edge {a}-{b} missing from an operand"));
        }
    }
    let mut g = g1.clone();
    for name in g2.names() {
        g.ensure_vertex(name);
    }
    for &(u, v) in g2.edges() {
        let a = g.vertex(g2.name(u)).unwrap();
        let b = g.vertex(g2.name(v)).unwrap();
        g.ensure_edge(a, b)?;
    }
    if let SumKind::TwoSumDelete(a, b) = kind {
        let drop = g.edge_by_names(a, b).unwrap();
        g = g.filter_edges(|e| e != drop);
    }
    Ok(g)
}

/// Deletes the degree-2 vertex `v` and joins its neighbours.
pub fn suppress_degree2(g: &Graph, v: VertexId) -> Result<Graph> {
    if g.degree(v) != 2 {
        return invalid(format!(
            "vertex {} has degree {}, not 2",
            g.name(v),
            g.degree(v)
        ));
    }
    let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
    let (na, nb) = (g.name(a).to_string(), g.name(b).to_string());
    let mut h = g.without_vertices(&[v]);
    let (x, y) = (h.vertex(&na).unwrap(), h.vertex(&nb).unwrap());
    h.ensure_edge(x, y)?;
    Ok(h)
}
