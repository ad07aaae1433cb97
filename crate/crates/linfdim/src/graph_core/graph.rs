use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{invalid, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Simple undirected graph with string vertex ids.
///
/// Vertices keep their insertion order; internally they are addressed by
/// index. Edges are stored as `(u, v)` with `u < v` in insertion order.
#[derive(Clone, Default)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    adj: Vec<Vec<VertexId>>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex names and name pairs.
    pub fn from_names<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (a, b) in edges {
            g.add_edge_by_name(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    /// Graph on vertices `0..n` named by their index.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(i.to_string())?;
        }
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return invalid(format!("duplicate vertex {name:?}"));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adj.push(Vec::new());
        Ok(id)
    }

    /// Returns the id of `name`, adding the vertex when missing.
    pub fn ensure_vertex(&mut self, name: &str) -> VertexId {
        match self.index.get(name) {
            Some(&v) => v,
            None => self.add_vertex(name).expect("fresh name"),
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u >= self.n() || v >= self.n() {
            return invalid(format!("edge ({u}, {v}) refers to a missing vertex"));
        }
        if u == v {
            return invalid(format!("loop at {:?}", self.names[u]));
        }
        let k = key(u, v);
        if self.edge_index.contains_key(&k) {
            return invalid(format!(
                "parallel edge {:?}-{:?}",
                self.names[u], self.names[v]
            ));
        }
        let id = self.edges.len();
        self.edges.push(k);
        self.edge_index.insert(k, id);
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str) -> Result<EdgeId> {
        let (Some(u), Some(v)) = (self.vertex(a), self.vertex(b)) else {
            return invalid(format!("edge {a:?}-{b:?} refers to a missing vertex"));
        };
        self.add_edge(u, v)
    }

    /// Adds the edge unless it is already present; returns its id either way.
    pub fn ensure_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        match self.edge_id(u, v) {
            Some(e) => Ok(e),
            None => self.add_edge(u, v),
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_names(&self, e: EdgeId) -> (&str, &str) {
        let (u, v) = self.edges[e];
        (&self.names[u], &self.names[v])
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&key(u, v)).copied()
    }

    pub fn edge_by_names(&self, a: &str, b: &str) -> Option<EdgeId> {
        self.edge_id(self.vertex(a)?, self.vertex(b)?)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index.contains_key(&key(u, v))
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Endpoint of `e` other than `v`.
    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// Subgraph induced by `keep`, listed in the order given.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut pos = vec![usize::MAX; self.n()];
        let mut g = Graph::new();
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
            g.add_vertex(self.names[v].clone()).expect("distinct vertices");
        }
        for &(u, v) in &self.edges {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).expect("simple");
            }
        }
        (g, keep.to_vec())
    }

    /// Removes the given vertices.
    pub fn without_vertices(&self, drop: &[VertexId]) -> Graph {
        let dropped: BTreeSet<_> = drop.iter().copied().collect();
        let keep: Vec<_> = (0..self.n()).filter(|v| !dropped.contains(v)).collect();
        self.induced(&keep).0
    }

    /// Same vertex set with only the edges for which `keep` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graph {
        let mut g = Graph::new();
        for name in &self.names {
            g.add_vertex(name.clone()).expect("distinct");
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep(e) {
                g.add_edge(u, v).expect("simple");
            }
        }
        g
    }

    /// Renames every vertex with `f`.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<Graph> {
        let mut g = Graph::new();
        for name in &self.names {
            g.add_vertex(f(name))?;
        }
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Contracts the vertex set `group` (which should induce a connected
    /// subgraph) into its first member. Parallel edges collapse.
    pub fn contract_set(&self, group: &[VertexId]) -> Graph {
        let rep = group[0];
        let inside: BTreeSet<_> = group.iter().copied().collect();
        let target = |v: VertexId| if inside.contains(&v) { rep } else { v };
        let keep: Vec<_> = (0..self.n())
            .filter(|v| *v == rep || !inside.contains(v))
            .collect();
        let mut pos = vec![usize::MAX; self.n()];
        let mut g = Graph::new();
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
            g.add_vertex(self.names[v].clone()).expect("distinct");
        }
        for &(u, v) in &self.edges {
            let (a, b) = (target(u), target(v));
            if a != b {
                g.ensure_edge(pos[a], pos[b]).expect("simple");
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_of(0, &[]).len() == self.n()
    }

    /// Vertices reachable from `start` avoiding `blocked`.
    pub fn component_of(&self, start: VertexId, blocked: &[VertexId]) -> Vec<VertexId> {
        let mut seen = vec![false; self.n()];
        for &b in blocked {
            seen[b] = true;
        }
        let mut out = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Connected components of `G - blocked`, each sorted.
    pub fn components_avoiding(&self, blocked: &[VertexId]) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n()];
        for &b in blocked {
            seen[b] = true;
        }
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = self.component_of(s, blocked);
            for &v in &comp {
                seen[v] = true;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Whether `set` induces a connected subgraph (empty sets are not).
    pub fn induces_connected(&self, set: &[VertexId]) -> bool {
        if set.is_empty() {
            return false;
        }
        let inside: BTreeSet<_> = set.iter().copied().collect();
        let mut seen = BTreeSet::from([set[0]]);
        let mut stack = vec![set[0]];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == inside.len()
    }

    pub fn is_two_connected(&self) -> bool {
        if self.n() < 3 || !self.is_connected() {
            return false;
        }
        (0..self.n()).all(|v| self.components_avoiding(&[v]).len() == 1)
    }

    /// At least four vertices and no separating pair.
    pub fn is_three_connected(&self) -> bool {
        if self.n() < 4 || !self.is_two_connected() {
            return false;
        }
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.components_avoiding(&[a, b]).len() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.is_connected() && (0..self.n()).all(|v| self.degree(v) == 2)
    }

    /// Sorted edge list as name pairs, each pair sorted.
    pub fn edge_name_set(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.names[u].clone(), self.names[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

/// Graphs are equal when they have the same vertex ids and the same edges,
/// regardless of insertion order.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.m() == other.m()
            && self.names.iter().all(|v| other.index.contains_key(v))
            && self.edge_name_set() == other.edge_name_set()
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_index_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallels() {
        let mut g = Graph::from_index_edges(2, &[(0, 1)]).unwrap();
        assert!(g.add_edge(1, 0).is_err());
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_vertex("0").is_err());
    }

    #[test]
    fn equality_ignores_order() {
        let a = Graph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let b = Graph::from_names(&["c", "b", "a"], &[("c", "b"), ("b", "a")]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn connectivity_levels() {
        assert!(k(4).is_three_connected());
        assert!(!k(3).is_three_connected());
        assert!(k(3).is_two_connected());
        let path = Graph::from_index_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_two_connected());
        let c4 = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.is_cycle() && c4.is_two_connected() && !c4.is_three_connected());
    }

    #[test]
    fn contraction_merges_parallels() {
        let c4 = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let t = c4.contract_set(&[1, 2]);
        assert_eq!((t.n(), t.m()), (3, 3));
    }
}
