//! SPQR trees built straight from the recursive definition, plus the
//! contracted variant with O-nodes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Error, Result};
use crate::graph_core::{EdgeTag, Graph, MultiEdge, MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    S,
    P,
    R,
    /// A contracted maximal subtree of S- and P-nodes.
    O,
}

impl NodeKind {
    pub fn tag(self) -> &'static str {
        match self {
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::R => "R",
            NodeKind::O => "O",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpqrNode {
    pub kind: NodeKind,
    pub minor: MultiGraph,
}

/// Tree edge `link` joins nodes `a` and `b`, which both hold the virtual
/// edge `Virtual(link)` between `ends`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub link: usize,
    pub ends: (VertexId, VertexId),
}

/// Node minors use the vertex ids of `host`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpqrTree {
    pub host: Graph,
    pub nodes: Vec<SpqrNode>,
    pub tree_edges: Vec<TreeEdge>,
}

impl SpqrTree {
    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        self.tree_edges
            .iter()
            .filter_map(|t| {
                if t.a == a {
                    Some(t.b)
                } else if t.b == a {
                    Some(t.a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        if self.nodes.len() < 2 {
            return Vec::new();
        }
        (0..self.nodes.len())
            .filter(|&a| self.neighbors(a).len() == 1)
            .collect()
    }

    /// Longest path in the tree, counted in edges.
    pub fn diameter(&self) -> usize {
        if self.nodes.is_empty() {
            return 0;
        }
        let (far, _) = self.farthest(0);
        self.farthest(far).1
    }

    fn farthest(&self, s: usize) -> (usize, usize) {
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        let mut best = (s, 0);
        while let Some(a) = queue.pop_front() {
            if dist[a] > best.1 {
                best = (a, dist[a]);
            }
            for b in self.neighbors(a) {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        best
    }

    pub fn kinds(&self) -> Vec<NodeKind> {
        self.nodes.iter().map(|n| n.kind).collect()
    }
}

fn degree(mg: &MultiGraph, v: VertexId) -> usize {
    mg.edges.iter().filter(|e| e.u == v || e.v == v).count()
}

/// Components of the piece after deleting `drop`.
fn components(mg: &MultiGraph, drop: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut seen: BTreeSet<VertexId> = drop.iter().copied().collect();
    let mut out = Vec::new();
    for &s in &mg.vertices {
        if seen.contains(&s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for e in &mg.edges {
                let w = if e.u == v {
                    e.v
                } else if e.v == v {
                    e.u
                } else {
                    continue;
                };
                if seen.insert(w) {
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn is_cycle_piece(mg: &MultiGraph) -> bool {
    mg.vertices.len() >= 3
        && mg.edges.len() == mg.vertices.len()
        && mg.vertices.iter().all(|&v| degree(mg, v) == 2)
        && components(mg, &[]).len() == 1
}

fn is_simple(mg: &MultiGraph) -> bool {
    let pairs: BTreeSet<_> = mg.edges.iter().map(|e| (e.u, e.v)).collect();
    pairs.len() == mg.edges.len()
}

/// Lexicographically smallest 2-cut whose vertices both have degree >= 3.
fn cutset(mg: &MultiGraph) -> Option<(VertexId, VertexId)> {
    let vs = &mg.vertices;
    for (i, &x) in vs.iter().enumerate() {
        if degree(mg, x) < 3 {
            continue;
        }
        for &y in &vs[i + 1..] {
            if degree(mg, y) >= 3 && components(mg, &[x, y]).len() >= 2 {
                return Some((x, y));
            }
        }
    }
    None
}

fn is_three_connected_piece(mg: &MultiGraph) -> bool {
    let vs = &mg.vertices;
    if vs.len() < 4 || !is_simple(mg) || components(mg, &[]).len() != 1 {
        return false;
    }
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            if components(mg, &[x, y]).len() > 1 {
                return false;
            }
        }
    }
    true
}

struct Builder {
    nodes: Vec<SpqrNode>,
    tree_edges: Vec<TreeEdge>,
    /// Link id to the first node seen holding it.
    pending: BTreeMap<usize, (usize, (VertexId, VertexId))>,
    next_link: usize,
}

impl Builder {
    /// Decomposes `piece` and returns its node id. Virtual edges already in
    /// `piece` are matched with their pending twins.
    fn split(&mut self, piece: MultiGraph) -> Result<usize> {
        let kind = if is_cycle_piece(&piece) {
            Some(NodeKind::S)
        } else if is_three_connected_piece(&piece) {
            Some(NodeKind::R)
        } else {
            None
        };
        if let Some(kind) = kind {
            return Ok(self.push(kind, piece));
        }
        let (x, y) = cutset(&piece).ok_or_else(|| {
            Error::Verification("piece is neither a cycle, 3-connected, nor 2-separable".into())
        })?;
        let xy = (x.min(y), x.max(y));
        let mut p_edges: Vec<MultiEdge> = piece
            .edges
            .iter()
            .filter(|e| (e.u, e.v) == xy)
            .copied()
            .collect();
        let comps = components(&piece, &[x, y]);
        // Two sides and no xy edge: the sides are joined directly.
        let direct = p_edges.is_empty() && comps.len() == 2;
        let shared = self.next_link;
        let mut children = Vec::new();
        for comp in comps {
            let link = if direct { shared } else { self.next_link };
            if !direct || children.is_empty() {
                self.next_link += 1;
            }
            let inside: BTreeSet<VertexId> = comp.iter().copied().chain([x, y]).collect();
            let mut edges: Vec<MultiEdge> = piece
                .edges
                .iter()
                .filter(|e| inside.contains(&e.u) && inside.contains(&e.v) && (e.u, e.v) != xy)
                .copied()
                .collect();
            edges.push(MultiEdge::new(x, y, EdgeTag::Virtual(link)));
            if !direct {
                p_edges.push(MultiEdge::new(x, y, EdgeTag::Virtual(link)));
            }
            children.push(MultiGraph::new(inside, edges));
        }
        let mut id = None;
        if !direct {
            id = Some(self.push(NodeKind::P, MultiGraph::new([x, y], p_edges)));
        }
        for child in children {
            let c = self.split(child)?;
            id.get_or_insert(c);
        }
        Ok(id.expect("a split has at least two sides"))
    }

    /// The first node holding a virtual edge registers it; the second one
    /// closes the tree edge.
    fn push(&mut self, kind: NodeKind, minor: MultiGraph) -> usize {
        let id = self.nodes.len();
        for e in &minor.edges {
            let EdgeTag::Virtual(link) = e.tag else { continue };
            match self.pending.remove(&link) {
                Some((a, ends)) => self.tree_edges.push(TreeEdge { a, b: id, link, ends }),
                None => {
                    self.pending.insert(link, (id, (e.u, e.v)));
                }
            }
        }
        self.nodes.push(SpqrNode { kind, minor });
        id
    }
}

/// SPQR tree of a 2-connected graph: cycles are S-nodes, 3-connected graphs
/// R-nodes; otherwise split at the smallest 2-cut `{x, y}` of degree-3+
/// vertices into a P-node holding the `xy` edges and one virtual `xy` per
/// component, and recurse on each component plus its virtual edge. With
/// exactly two components and no `xy` edge the P-node is skipped.
pub fn spqr(g: &Graph) -> Result<SpqrTree> {
    if g.n() < 3 || !g.is_two_connected() {
        return invalid("SPQR trees need a 2-connected graph on at least 3 vertices");
    }
    let root = MultiGraph::new(
        0..g.n(),
        g.edges()
            .iter()
            .map(|&(u, v)| MultiEdge::new(u, v, EdgeTag::Real))
            .collect(),
    );
    let mut b = Builder {
        nodes: Vec::new(),
        tree_edges: Vec::new(),
        pending: BTreeMap::new(),
        next_link: 0,
    };
    b.split(root)?;
    if !b.pending.is_empty() {
        return Err(Error::Verification("unmatched virtual edge".into()));
    }
    b.tree_edges.sort_by_key(|t| t.link);
    Ok(SpqrTree {
        host: g.clone(),
        nodes: b.nodes,
        tree_edges: b.tree_edges,
    })
}

fn check_links(t: &SpqrTree) -> Result<()> {
    let n = t.nodes.len();
    if n == 0 || t.tree_edges.len() + 1 != n {
        return invalid("tree must have one edge fewer than nodes");
    }
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for node in &t.nodes {
        for l in node.minor.virtual_links() {
            *count.entry(l).or_default() += 1;
        }
    }
    for te in &t.tree_edges {
        if te.a >= n || te.b >= n || te.a == te.b {
            return invalid(format!("tree edge {} names a missing node", te.link));
        }
        let has = |a: usize| {
            t.nodes[a].minor.edges.iter().any(|e| {
                e.tag == EdgeTag::Virtual(te.link) && (e.u, e.v) == te.ends
            })
        };
        if !has(te.a) || !has(te.b) || count.get(&te.link) != Some(&2) {
            return invalid(format!("virtual edge {} is not shared by its two nodes", te.link));
        }
    }
    if count.len() != t.tree_edges.len() {
        return invalid("virtual edge without a tree edge");
    }
    let mut reach = vec![false; n];
    reach[0] = true;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in t.neighbors(a) {
            if !reach[b] {
                reach[b] = true;
                stack.push(b);
            }
        }
    }
    if reach.iter().any(|r| !r) {
        return invalid("tree is disconnected");
    }
    Ok(())
}

/// 2-sum of the node minors along every tree edge, deleting each pair of
/// virtual edges.
pub fn spqr_recompose(t: &SpqrTree) -> Result<Graph> {
    check_links(t)?;
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for node in &t.nodes {
        vertices.extend(node.minor.vertices.iter().copied());
        edges.extend(node.minor.real_edges().copied());
    }
    let mut g = Graph::new();
    let mut pos = BTreeMap::new();
    for v in vertices {
        if v >= t.host.n() {
            return invalid(format!("vertex {v} is not in the host"));
        }
        pos.insert(v, g.add_vertex(t.host.name(v))?);
    }
    for e in edges {
        g.add_edge(pos[&e.u], pos[&e.v])
            .map_err(|_| Error::InvalidInput("real edge appears in two nodes".into()))?;
    }
    Ok(g)
}

/// Merges every maximal connected subtree of S- and P-nodes into one
/// O-node whose minor is the 2-sum of its members.
pub fn contract_spqr(t: &SpqrTree) -> Result<SpqrTree> {
    check_links(t)?;
    if t.nodes.iter().any(|n| n.kind == NodeKind::O) {
        return invalid("tree is already contracted");
    }
    let n = t.nodes.len();
    let soft = |a: usize| matches!(t.nodes[a].kind, NodeKind::S | NodeKind::P);
    let mut group = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if group[s] != usize::MAX {
            continue;
        }
        let id = groups.len();
        group[s] = id;
        let mut members = vec![s];
        if soft(s) {
            let mut i = 0;
            while i < members.len() {
                for b in t.neighbors(members[i]) {
                    if soft(b) && group[b] == usize::MAX {
                        group[b] = id;
                        members.push(b);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    let internal: BTreeSet<usize> = t
        .tree_edges
        .iter()
        .filter(|te| group[te.a] == group[te.b])
        .map(|te| te.link)
        .collect();
    let nodes = groups
        .iter()
        .map(|members| {
            if members.len() == 1 && !soft(members[0]) {
                return t.nodes[members[0]].clone();
            }
            let mut vs = BTreeSet::new();
            let mut edges = Vec::new();
            for &a in members {
                vs.extend(t.nodes[a].minor.vertices.iter().copied());
                edges.extend(t.nodes[a].minor.edges.iter().filter(|e| match e.tag {
                    EdgeTag::Virtual(l) => !internal.contains(&l),
                    EdgeTag::Real => true,
                }));
            }
            SpqrNode {
                kind: NodeKind::O,
                minor: MultiGraph::new(vs, edges),
            }
        })
        .collect();
    let tree_edges = t
        .tree_edges
        .iter()
        .filter(|te| !internal.contains(&te.link))
        .map(|te| TreeEdge {
            a: group[te.a],
            b: group[te.b],
            ..*te
        })
        .collect();
    Ok(SpqrTree {
        host: t.host.clone(),
        nodes,
        tree_edges,
    })
}

/// True when the contracted tree has diameter at least `6k`.
pub fn spqr_diameter_check(t: &SpqrTree, k: usize) -> bool {
    t.diameter() >= 6 * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators::{complete, cycle, wheel};
    use crate::graph_core::{graph_sum, SumKind};

    fn k4_k4(keep: bool) -> Graph {
        let a = complete(4).unwrap();
        let b = a
            .relabel(|s| match s {
                "v1" | "v2" => s.to_string(),
                _ => format!("w{s}"),
            })
            .unwrap();
        let kind = if keep {
            SumKind::TwoSumKeep("v1".into(), "v2".into())
        } else {
            SumKind::TwoSumDelete("v1".into(), "v2".into())
        };
        graph_sum(&a, &b, &kind).unwrap()
    }

    #[test]
    fn single_nodes() {
        let k5 = complete(5).unwrap();
        let t = spqr(&k5).unwrap();
        assert_eq!(t.kinds(), vec![NodeKind::R]);
        assert_eq!(spqr_recompose(&t).unwrap(), k5);
        let c6 = cycle(6).unwrap();
        let t = spqr(&c6).unwrap();
        assert_eq!(t.kinds(), vec![NodeKind::S]);
        assert_eq!(spqr_recompose(&t).unwrap(), c6);
        let c = contract_spqr(&t).unwrap();
        assert_eq!(c.kinds(), vec![NodeKind::O]);
        assert!(!spqr_diameter_check(&c, 1));
    }

    #[test]
    fn two_k4s() {
        let g = k4_k4(true);
        let t = spqr(&g).unwrap();
        let mut kinds = t.kinds();
        kinds.sort();
        assert_eq!(kinds, vec![NodeKind::P, NodeKind::R, NodeKind::R]);
        let p = t.nodes.iter().find(|n| n.kind == NodeKind::P).unwrap();
        assert_eq!(p.minor.real_edges().count(), 1);
        assert_eq!(p.minor.edges.len(), 3);
        assert_eq!(spqr_recompose(&t).unwrap(), g);
        let c = contract_spqr(&t).unwrap();
        let mid: Vec<_> = (0..3).filter(|&a| c.neighbors(a).len() == 2).collect();
        assert_eq!(mid.len(), 1);
        assert_eq!(c.nodes[mid[0]].kind, NodeKind::O);
        assert_eq!(c.diameter(), 2);
        assert!(c.leaves().iter().all(|&a| c.nodes[a].kind == NodeKind::R));
        let d = k4_k4(false);
        let t = spqr(&d).unwrap();
        assert_eq!(t.kinds(), vec![NodeKind::R, NodeKind::R]);
        assert_eq!(t.tree_edges.len(), 1);
        assert_eq!(spqr_recompose(&t).unwrap(), d);
    }

    #[test]
    fn wheel_is_r() {
        let t = spqr(&wheel(6).unwrap()).unwrap();
        assert_eq!(t.kinds(), vec![NodeKind::R]);
    }

    #[test]
    fn rejects_bad_input() {
        let path = crate::graph_core::generators::path(4).unwrap();
        assert!(spqr(&path).is_err());
        let mut t = spqr(&k4_k4(true)).unwrap();
        t.tree_edges.pop();
        assert!(spqr_recompose(&t).is_err());
    }
}
