//! Arcs of the bidirected graph, signed weights and the difference-constraint
//! engine behind every flatness test.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::graph_core::{EdgeId, Graph, MetricGraph, VertexId};
use crate::scalar::Scalar;

/// One direction of an edge. `forward` runs from the smaller to the larger
/// endpoint id, as stored in the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Arc {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Self { edge, forward }
    }

    /// The arc `(v, w)`, if `vw` is an edge.
    pub fn between(g: &Graph, v: VertexId, w: VertexId) -> Option<Self> {
        let e = g.edge_id(v, w)?;
        Some(Self {
            edge: e,
            forward: g.edge(e).0 == v,
        })
    }

    pub fn by_names(g: &Graph, v: &str, w: &str) -> Option<Self> {
        Self::between(g, g.vertex(v)?, g.vertex(w)?)
    }

    pub fn reversed(self) -> Self {
        Self {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    pub fn tail(self, g: &Graph) -> VertexId {
        let (a, b) = g.edge(self.edge);
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn head(self, g: &Graph) -> VertexId {
        let (a, b) = g.edge(self.edge);
        if self.forward {
            b
        } else {
            a
        }
    }

    /// Position in the arc list of [`ArcSystem`].
    pub(crate) fn slot(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }
}

/// A set of arcs of the bidirected graph of some host.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSet {
    pub arcs: BTreeSet<Arc>,
}

impl ArcSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        Self {
            arcs: arcs.into_iter().collect(),
        }
    }

    /// All arcs leaving `v`.
    pub fn out_star(g: &Graph, v: VertexId) -> Self {
        Self::from_arcs(
            g.neighbors(v)
                .iter()
                .map(|&w| Arc::between(g, v, w).unwrap()),
        )
    }

    pub fn insert(&mut self, a: Arc) -> bool {
        self.arcs.insert(a)
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.arcs.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    /// Underlying edges, sorted and deduplicated.
    pub fn edges(&self) -> Vec<EdgeId> {
        let set: BTreeSet<_> = self.arcs.iter().map(|a| a.edge).collect();
        set.into_iter().collect()
    }

    pub fn covers(&self, e: EdgeId) -> bool {
        self.contains(Arc::new(e, true)) || self.contains(Arc::new(e, false))
    }

    /// Every arc reversed.
    pub fn reversed(&self) -> Self {
        Self::from_arcs(self.arcs.iter().map(|a| a.reversed()))
    }

    /// Checks that arcs name host edges and that opposite arcs only appear
    /// together on zero-length edges.
    pub fn validate<S: Scalar>(&self, mg: &MetricGraph<S>) -> Result<()> {
        for a in &self.arcs {
            if a.edge >= mg.m() {
                return invalid(format!("arc on missing edge {}", a.edge));
            }
            if a.forward && self.contains(a.reversed()) && !mg.d(a.edge).is_zero() {
                let (x, y) = mg.graph().edge_names(a.edge);
                return invalid(format!("both directions of {x}-{y} with nonzero length"));
            }
        }
        Ok(())
    }

    pub fn describe(&self, g: &Graph) -> Vec<(String, String)> {
        self.arcs
            .iter()
            .map(|a| (g.name(a.tail(g)).to_string(), g.name(a.head(g)).to_string()))
            .collect()
    }
}

/// Vertex labels `p` with `p(w) - p(v) <= l(v, w)` on every arc.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential<S> {
    pub p: Vec<S>,
}

/// A directed cycle `vertices[0] -> vertices[1] -> ... -> vertices[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativeCycle<S> {
    pub vertices: Vec<VertexId>,
    pub arcs: Vec<Arc>,
    pub weight: S,
}

/// Difference constraints `p(head) - p(tail) <= weight` over the arcs of the
/// bidirected graph. Slot `2e` is the forward arc of edge `e`, slot `2e + 1`
/// the backward arc. Arcs start at `+d`; marking an arc flat sets it to `-d`.
#[derive(Clone, Debug)]
pub(crate) struct ArcSystem<S> {
    n: usize,
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
    length: Vec<S>,
    weight: Vec<S>,
    out: Vec<Vec<usize>>,
}

impl<S: Scalar> ArcSystem<S> {
    pub fn new(mg: &MetricGraph<S>) -> Self {
        let g = mg.graph();
        let mut tail = Vec::with_capacity(2 * g.m());
        let mut head = Vec::with_capacity(2 * g.m());
        let mut length = Vec::with_capacity(2 * g.m());
        let mut out = vec![Vec::new(); g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            out[u].push(tail.len());
            tail.push(u);
            head.push(v);
            length.push(mg.d(e).clone());
            out[v].push(tail.len());
            tail.push(v);
            head.push(u);
            length.push(mg.d(e).clone());
        }
        let weight = length.clone();
        Self {
            n: g.n(),
            tail,
            head,
            length,
            weight,
            out,
        }
    }

    pub fn with_flat(mg: &MetricGraph<S>, f: &ArcSet) -> Self {
        let mut sys = Self::new(mg);
        for a in f.iter() {
            sys.set_flat(a, true);
        }
        sys
    }

    pub fn set_flat(&mut self, a: Arc, flat: bool) {
        let s = a.slot();
        self.weight[s] = if flat {
            -self.length[s].clone()
        } else {
            self.length[s].clone()
        };
    }

    /// Overrides the constraint of one slot.
    pub fn set_weight(&mut self, slot: usize, w: S) {
        self.weight[slot] = w;
    }

    pub fn weight(&self, slot: usize) -> &S {
        &self.weight[slot]
    }

    /// Label-correcting relaxation from a virtual zero source (or from
    /// `init`, a warm start). Returns feasible labels, or the arc slots of a
    /// negative cycle found by walking predecessors.
    pub fn solve(&self, init: Option<&[S]>) -> std::result::Result<Vec<S>, Vec<usize>> {
        let n = self.n;
        let mut label: Vec<S> = match init {
            Some(p) => p.to_vec(),
            None => vec![S::zero(); n],
        };
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut active: Vec<bool> = vec![true; n];
        let mut pass = 0usize;
        loop {
            let mut next = vec![false; n];
            let mut changed = false;
            for v in 0..n {
                if !active[v] {
                    continue;
                }
                for &s in &self.out[v] {
                    let w = self.head[s];
                    let cand = label[v].clone() + self.weight[s].clone();
                    if cand < label[w] {
                        label[w] = cand;
                        pred[w] = Some(s);
                        next[w] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(label);
            }
            pass += 1;
            if pass >= n {
                for v in 0..n {
                    if next[v] {
                        if let Some(cycle) = self.pred_cycle(&pred, v) {
                            return Err(cycle);
                        }
                    }
                }
            }
            active = next;
        }
    }

    fn pred_cycle(&self, pred: &[Option<usize>], start: VertexId) -> Option<Vec<usize>> {
        let mut seen = vec![usize::MAX; self.n];
        let mut v = start;
        let mut step = 0;
        while seen[v] == usize::MAX {
            seen[v] = step;
            step += 1;
            v = self.tail[pred[v]?];
        }
        // v is on the cycle; collect it backwards.
        let mut cycle = Vec::new();
        let mut x = v;
        loop {
            let s = pred[x].unwrap();
            cycle.push(s);
            x = self.tail[s];
            if x == v {
                break;
            }
        }
        cycle.reverse();
        Some(cycle)
    }

    pub fn slot_arc(slot: usize) -> Arc {
        Arc::new(slot / 2, slot % 2 == 0)
    }

    pub fn cycle_from_slots(&self, slots: &[usize]) -> NegativeCycle<S> {
        let mut weight = S::zero();
        for &s in slots {
            weight = weight + self.weight[s].clone();
        }
        NegativeCycle {
            vertices: slots.iter().map(|&s| self.tail[s]).collect(),
            arcs: slots.iter().map(|&s| Self::slot_arc(s)).collect(),
            weight,
        }
    }
}
