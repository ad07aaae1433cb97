use super::flat::{is_flattenable, FlattenConfig};
use crate::error::{invalid, Result};
use crate::graph_core::{EdgeId, Graph, MetricGraph};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncompatMode {
    /// `{e, f}` is not flattenable.
    Exact,
    /// Path-sum criterion with shortest paths.
    Sufficient,
}

/// True when no flat set covers both `e` and `f`.
pub fn incompatible_exact<S: Scalar>(mg: &MetricGraph<S>, e: EdgeId, f: EdgeId) -> Result<bool> {
    if e == f {
        return invalid("incompatibility needs two distinct edges");
    }
    if mg.graph().edges_adjacent(e, f) {
        return Ok(false);
    }
    Ok(is_flattenable(mg, &[e, f], FlattenConfig::default())?.is_none())
}

/// With `e = v1v2` and `f = w1w2`: both `dist(v1,w1) + dist(v2,w2)` and
/// `dist(v1,w2) + dist(v2,w1)` are strictly below `d(e) + d(f)`.
pub fn incompatible_sufficient<S: Scalar>(
    mg: &MetricGraph<S>,
    e: EdgeId,
    f: EdgeId,
) -> Result<bool> {
    if e == f || mg.graph().edges_adjacent(e, f) {
        return invalid("the path-sum criterion needs two independent edges");
    }
    let dist = mg.all_pairs();
    Ok(sufficient_with(mg, &dist, e, f))
}

fn sufficient_with<S: Scalar>(
    mg: &MetricGraph<S>,
    dist: &[Vec<Option<S>>],
    e: EdgeId,
    f: EdgeId,
) -> bool {
    let (v1, v2) = mg.graph().edge(e);
    let (w1, w2) = mg.graph().edge(f);
    let total = mg.d(e).clone() + mg.d(f).clone();
    let pair = |a: usize, b: usize, c: usize, x: usize| match (&dist[a][b], &dist[c][x]) {
        (Some(p), Some(q)) => Some(p.clone() + q.clone()),
        _ => None,
    };
    let straight = pair(v1, w1, v2, w2);
    let crossed = pair(v1, w2, v2, w1);
    match (straight, crossed) {
        (Some(s), Some(c)) => s < total && c < total,
        _ => false,
    }
}

/// Graph on the edges of `mg` (vertex `i` is edge `i`, named `u-v`),
/// adjacent when the chosen test says incompatible.
pub fn incompatibility_graph<S: Scalar>(mg: &MetricGraph<S>, mode: IncompatMode) -> Result<Graph> {
    let g = mg.graph();
    let mut h = Graph::new();
    for e in 0..g.m() {
        let (a, b) = g.edge_names(e);
        h.add_vertex(format!("{a}-{b}"))?;
    }
    let dist = match mode {
        IncompatMode::Sufficient => Some(mg.all_pairs()),
        IncompatMode::Exact => None,
    };
    for e in 0..g.m() {
        for f in e + 1..g.m() {
            if g.edges_adjacent(e, f) {
                continue;
            }
            let hit = match &dist {
                Some(dist) => sufficient_with(mg, dist, e, f),
                None => incompatible_exact(mg, e, f)?,
            };
            if hit {
                h.add_edge(e, f)?;
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators::{certificate, complete, Family};
    use crate::scalar::rat;

    #[test]
    fn s2_certificate_pair() {
        let c = certificate(Family::S, 2).unwrap();
        let g = c.metric.graph();
        let e = g.edge_by_names("v", "v1").unwrap();
        let f = g.edge_by_names("w", "w1").unwrap();
        assert!(incompatible_exact(&c.metric, e, f).unwrap());
        assert!(incompatible_sufficient(&c.metric, e, f).unwrap());
        let h = incompatibility_graph(&c.metric, IncompatMode::Exact).unwrap();
        let m = g.edge_by_names("v2", "w2").unwrap();
        assert!(h.has_edge(e, f) && h.has_edge(e, m) && h.has_edge(f, m));
    }

    #[test]
    fn unit_k4_has_no_incompatible_pairs() {
        let mg = MetricGraph::uniform(complete(4).unwrap(), rat(1));
        let g = mg.graph();
        let e = g.edge_by_names("v1", "v2").unwrap();
        let f = g.edge_by_names("v3", "v4").unwrap();
        assert!(!incompatible_exact(&mg, e, f).unwrap());
        assert!(!incompatible_sufficient(&mg, e, f).unwrap());
        let adj = g.edge_by_names("v1", "v3").unwrap();
        assert!(!incompatible_exact(&mg, e, adj).unwrap());
        assert!(incompatible_sufficient(&mg, e, adj).is_err());
    }

    #[test]
    fn necklace_pair() {
        let c = certificate(Family::N, 2).unwrap();
        let g = c.metric.graph();
        let e = g.edge_by_names("v0", "w0").unwrap();
        let f = g.edge_by_names("v1", "w1").unwrap();
        assert!(incompatible_sufficient(&c.metric, e, f).unwrap());
    }
}
