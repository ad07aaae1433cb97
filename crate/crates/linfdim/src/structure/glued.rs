//! Graphs with glued edges and the search for glued edges made parallel.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Error, Result};
use crate::graph_core::{graph_sum, EdgeId, Graph, SumKind, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedGraph {
    pub base: Graph,
    pub glued: BTreeSet<EdgeId>,
    /// Graph glued onto each glued edge; shares exactly that edge's ends
    /// (by name) with `base`.
    pub attachments: BTreeMap<EdgeId, Graph>,
}

impl GluedGraph {
    pub fn new(
        base: Graph,
        glued: impl IntoIterator<Item = EdgeId>,
        attachments: BTreeMap<EdgeId, Graph>,
    ) -> Result<Self> {
        let glued: BTreeSet<EdgeId> = glued.into_iter().collect();
        if let Some(&e) = glued.iter().find(|&&e| e >= base.m()) {
            return invalid(format!("glued edge {e} is not in the base"));
        }
        let base_names: BTreeSet<&str> = base.names().iter().map(String::as_str).collect();
        for (&e, att) in &attachments {
            if !glued.contains(&e) {
                return invalid(format!("attachment on edge {e}, which is not glued"));
            }
            let (a, b) = base.edge_names(e);
            let shared: BTreeSet<&str> = att
                .names()
                .iter()
                .map(String::as_str)
                .filter(|s| base_names.contains(s))
                .collect();
            if shared != BTreeSet::from([a, b]) || att.edge_by_names(a, b).is_none() {
                return invalid(format!("attachment on {a}-{b} must meet the base in exactly that edge"));
            }
            if !att.is_two_connected() {
                return invalid(format!("attachment on {a}-{b} is not 2-connected"));
            }
        }
        Ok(Self {
            base,
            glued,
            attachments,
        })
    }

    /// The base with every attachment glued on (each glued edge kept).
    pub fn compose(&self) -> Result<Graph> {
        let mut g = self.base.clone();
        for (&e, att) in &self.attachments {
            let (a, b) = self.base.edge_names(e);
            g = graph_sum(&g, att, &SumKind::TwoSumKeep(a.into(), b.into()))?;
        }
        Ok(g)
    }
}

/// Two disjoint connected sides with `edges` (glued, at least `k`) running
/// between them; contracting each side leaves those edges in parallel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlumpkinModel {
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

pub const GLUMPKIN_MAX_VERTICES: usize = 14;

/// Searches connected sets `A`; the other side can always be taken to be a
/// whole component of `base - A`.
pub fn glumpkin_search(gg: &GluedGraph, k: usize, root: Option<EdgeId>) -> Result<Option<GlumpkinModel>> {
    let g = &gg.base;
    if g.n() > GLUMPKIN_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "base vertex count",
            limit: GLUMPKIN_MAX_VERTICES,
            actual: g.n(),
        });
    }
    if let Some(r) = root {
        if !gg.glued.contains(&r) {
            return invalid("root must be a glued edge");
        }
    }
    if k == 0 || gg.glued.len() < k {
        return Ok(None);
    }
    let n = g.n();
    for mask in 1u32..(1u32 << n) {
        let side: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if !g.induces_connected(&side) {
            continue;
        }
        for comp in g.components_avoiding(&side) {
            let in_comp: BTreeSet<VertexId> = comp.iter().copied().collect();
            let edges: Vec<EdgeId> = gg
                .glued
                .iter()
                .copied()
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    (mask >> u & 1 == 1 && in_comp.contains(&v))
                        || (mask >> v & 1 == 1 && in_comp.contains(&u))
                })
                .collect();
            if edges.len() < k || root.is_some_and(|r| !edges.contains(&r)) {
                continue;
            }
            let mut chosen: Vec<EdgeId> = root.into_iter().collect();
            chosen.extend(edges.iter().copied().filter(|&e| Some(e) != root).take(k - chosen.len()));
            chosen.sort_unstable();
            return Ok(Some(GlumpkinModel {
                side_a: side,
                side_b: comp,
                edges: chosen,
            }));
        }
    }
    Ok(None)
}

/// Checks a model against the definition.
pub fn verify_glumpkin(gg: &GluedGraph, model: &GlumpkinModel, k: usize) -> bool {
    let g = &gg.base;
    let a: BTreeSet<_> = model.side_a.iter().copied().collect();
    let b: BTreeSet<_> = model.side_b.iter().copied().collect();
    let distinct: BTreeSet<_> = model.edges.iter().collect();
    !a.is_empty()
        && !b.is_empty()
        && a.is_disjoint(&b)
        && g.induces_connected(&model.side_a)
        && g.induces_connected(&model.side_b)
        && distinct.len() == model.edges.len()
        && model.edges.len() >= k
        && model.edges.iter().all(|&e| {
            let (u, v) = g.edge(e);
            gg.glued.contains(&e)
                && ((a.contains(&u) && b.contains(&v)) || (a.contains(&v) && b.contains(&u)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators::{complete, wheel};

    fn glued(base: Graph, names: &[(&str, &str)]) -> GluedGraph {
        let ids: Vec<EdgeId> = names
            .iter()
            .map(|&(a, b)| base.edge_by_names(a, b).unwrap())
            .collect();
        GluedGraph::new(base, ids, BTreeMap::new()).unwrap()
    }

    #[test]
    fn k4_matching() {
        let gg = glued(complete(4).unwrap(), &[("v1", "v2"), ("v3", "v4")]);
        let m = glumpkin_search(&gg, 2, None).unwrap().unwrap();
        assert!(verify_glumpkin(&gg, &m, 2));
        let r = gg.base.edge_by_names("v3", "v4").unwrap();
        let m = glumpkin_search(&gg, 2, Some(r)).unwrap().unwrap();
        assert!(m.edges.contains(&r));
    }

    #[test]
    fn triangle_has_one() {
        let gg = glued(complete(3).unwrap(), &[("v1", "v2")]);
        assert_eq!(glumpkin_search(&gg, 2, None).unwrap(), None);
    }

    #[test]
    fn wheel_spokes() {
        let gg = glued(wheel(5).unwrap(), &[("v0", "v1"), ("v0", "v3"), ("v0", "v4")]);
        let m = glumpkin_search(&gg, 3, None).unwrap().unwrap();
        assert!(verify_glumpkin(&gg, &m, 3));
        assert_eq!(glumpkin_search(&gg, 4, None).unwrap(), None);
    }

    #[test]
    fn attachments_and_cap() {
        let base = complete(4).unwrap();
        let att = complete(4)
            .unwrap()
            .relabel(|s| match s {
                "v1" | "v2" => s.to_string(),
                _ => format!("a{s}"),
            })
            .unwrap();
        let e = base.edge_by_names("v1", "v2").unwrap();
        let gg = GluedGraph::new(base.clone(), [e], BTreeMap::from([(e, att.clone())])).unwrap();
        let g = gg.compose().unwrap();
        assert_eq!((g.n(), g.m()), (6, 11));
        let f = base.edge_by_names("v3", "v4").unwrap();
        assert!(GluedGraph::new(base.clone(), [f], BTreeMap::from([(f, att)])).is_err());
        let big = GluedGraph::new(crate::graph_core::generators::cycle(15).unwrap(), [0], BTreeMap::new()).unwrap();
        assert!(glumpkin_search(&big, 1, None).is_err());
    }
}
