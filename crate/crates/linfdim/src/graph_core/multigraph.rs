use std::collections::BTreeSet;

use super::graph::{Graph, VertexId};

/// Edge flag used by the SPQR machinery. Virtual edges carry the id of the
/// tree edge that pairs them with their twin in a neighbouring node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    Real,
    Virtual(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub tag: EdgeTag,
}

impl MultiEdge {
    pub fn new(u: VertexId, v: VertexId, tag: EdgeTag) -> Self {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Self { u, v, tag }
    }
}

/// Loopless multigraph over vertex ids of some ambient [`Graph`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<MultiEdge>,
}

impl MultiGraph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: Vec<MultiEdge>) -> Self {
        let set: BTreeSet<_> = vertices.into_iter().collect();
        debug_assert!(edges.iter().all(|e| e.u != e.v));
        Self {
            vertices: set.into_iter().collect(),
            edges,
        }
    }

    pub fn real_edges(&self) -> impl Iterator<Item = &MultiEdge> {
        self.edges.iter().filter(|e| e.tag == EdgeTag::Real)
    }

    pub fn virtual_links(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(|e| match e.tag {
            EdgeTag::Virtual(l) => Some(l),
            EdgeTag::Real => None,
        })
    }

    /// Underlying simple graph (parallel edges merged), named after `ambient`.
    pub fn simple(&self, ambient: &Graph) -> Graph {
        let mut g = Graph::new();
        for &v in &self.vertices {
            g.add_vertex(ambient.name(v)).expect("distinct");
        }
        let pos = |x: VertexId| self.vertices.binary_search(&x).unwrap();
        for e in &self.edges {
            g.ensure_edge(pos(e.u), pos(e.v)).expect("loopless");
        }
        g
    }

    /// Treewidth at most two, by series-parallel reduction: repeatedly drop
    /// vertices of degree at most one and suppress degree-two vertices,
    /// merging parallel edges as they appear.
    pub fn treewidth_at_most_two(&self) -> bool {
        let n = self.vertices.len();
        let pos = |x: VertexId| self.vertices.binary_search(&x).unwrap();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for e in &self.edges {
            let (a, b) = (pos(e.u), pos(e.v));
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut alive = vec![true; n];
        let mut left = n;
        loop {
            let pick = (0..n).find(|&v| alive[v] && adj[v].len() <= 2);
            let Some(v) = pick else { break };
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            for &w in &nb {
                adj[w].remove(&v);
            }
            if nb.len() == 2 {
                adj[nb[0]].insert(nb[1]);
                adj[nb[1]].insert(nb[0]);
            }
            adj[v].clear();
            alive[v] = false;
            left -= 1;
        }
        left == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::new(
            0..n,
            pairs
                .iter()
                .map(|&(u, v)| MultiEdge::new(u, v, EdgeTag::Real))
                .collect(),
        )
    }

    #[test]
    fn series_parallel_test() {
        let k4 = from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(!k4.treewidth_at_most_two());
        let k4_minus = from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        assert!(k4_minus.treewidth_at_most_two());
        let c5 = from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(c5.treewidth_at_most_two());
    }
}
