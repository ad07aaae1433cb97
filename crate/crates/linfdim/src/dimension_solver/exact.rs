//! Branch and bound over partitions of the edges into flattenable classes.

use std::any::Any;
use std::collections::HashMap;

use super::bounds::{exact_incompat_masks, max_clique, upper_bound_tau};
use crate::error::{invalid, Error, Result};
use crate::flat_cover::flat::orient;
use crate::flat_cover::signed::{Arc, ArcSystem};
use crate::flat_cover::{ArcSet, FlatCovering};
use crate::graph_core::{EdgeId, MetricGraph, MetricVerdict};
use crate::scalar::{Rational, Scalar};

/// Edge sets are tracked as `u128` masks.
pub const MAX_EDGES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes (class assignments tried) before giving up.
    pub max_nodes: u64,
    /// Largest class count the search will try.
    pub max_class_count: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 20_000_000,
            max_class_count: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    pub dimension: usize,
    pub covering: FlatCovering,
    /// Pairwise incompatible edges.
    pub lower_bound_witness: Vec<EdgeId>,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimOutcome {
    Solved(DimResult),
    /// The dimension lies in `[lb, ub]`.
    BudgetExhausted { lb: usize, ub: usize, nodes_explored: u64 },
}

impl DimOutcome {
    pub fn solved(self) -> Option<DimResult> {
        match self {
            DimOutcome::Solved(r) => Some(r),
            DimOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        match self {
            DimOutcome::Solved(r) => Some(r.dimension),
            DimOutcome::BudgetExhausted { .. } => None,
        }
    }

    pub fn interval(&self) -> (usize, usize) {
        match self {
            DimOutcome::Solved(r) => (r.dimension, r.dimension),
            DimOutcome::BudgetExhausted { lb, ub, .. } => (*lb, *ub),
        }
    }
}

/// Least `k` such that the edges split into `k` flattenable classes.
///
/// Rational inputs are rescaled to `i64` when they fit; the covering only
/// records arcs, so it is valid for the original distances.
pub fn exact_dim<S: Scalar>(mg: &MetricGraph<S>, budget: &Budget) -> Result<DimOutcome> {
    if budget.max_nodes == 0 || budget.max_class_count == 0 {
        return invalid("budget limits must be positive");
    }
    if let MetricVerdict::Violated { edge, .. } = mg.validate()? {
        let (a, b) = mg.graph().edge_names(edge);
        return invalid(format!("d({a}{b}) is longer than a path between its ends"));
    }
    if mg.m() > MAX_EDGES {
        return Err(Error::CapExceeded {
            what: "edge count",
            limit: MAX_EDGES,
            actual: mg.m(),
        });
    }
    if let Some(q) = (mg as &dyn Any).downcast_ref::<MetricGraph<Rational>>() {
        if let Some(int) = q.to_scaled_i64() {
            return solve(&int, budget);
        }
    }
    solve(mg, budget)
}

fn solve<T: Scalar>(mg: &MetricGraph<T>, budget: &Budget) -> Result<DimOutcome> {
    let m = mg.m();
    if m == 0 {
        return Ok(DimOutcome::Solved(DimResult {
            dimension: 0,
            covering: FlatCovering::default(),
            lower_bound_witness: Vec::new(),
            nodes_explored: 0,
        }));
    }
    let g = mg.graph();
    let incompat = exact_incompat_masks(mg)?;
    let clique = max_clique(&incompat);
    let witness: Vec<EdgeId> = (0..m).filter(|&e| clique >> e & 1 == 1).collect();
    let lb = witness.len().max(1);
    let tau = upper_bound_tau(g);
    let ub = tau.size;

    let mut order = witness.clone();
    let mut rest: Vec<EdgeId> = (0..m).filter(|&e| clique >> e & 1 == 0).collect();
    rest.sort_by(|&a, &b| {
        mg.d(b)
            .partial_cmp(mg.d(a))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order.extend(rest);

    let mut memo = HashMap::new();
    let mut nodes = 0u64;
    let top = (ub - 1).min(budget.max_class_count);
    for k in lb..=top {
        let mut search = Search {
            mg,
            k,
            order: &order,
            incompat: &incompat,
            classes: (0..k).map(|_| Class::new(mg)).collect(),
            opened: 0,
            memo: &mut memo,
            nodes,
            max_nodes: budget.max_nodes,
            exhausted: false,
        };
        let found = search.dfs(0);
        nodes = search.nodes;
        if found {
            let sets: Vec<ArcSet> = search
                .classes
                .iter()
                .filter(|c| c.mask != 0)
                .map(|c| ArcSet::from_arcs(c.arcs.iter().copied()))
                .collect();
            return Ok(DimOutcome::Solved(DimResult {
                dimension: sets.len(),
                covering: FlatCovering::new(sets),
                lower_bound_witness: witness,
                nodes_explored: nodes,
            }));
        }
        if search.exhausted {
            return Ok(DimOutcome::BudgetExhausted {
                lb: k,
                ub,
                nodes_explored: nodes,
            });
        }
    }
    if ub > budget.max_class_count {
        return Ok(DimOutcome::BudgetExhausted {
            lb: lb.max(top + 1),
            ub,
            nodes_explored: nodes,
        });
    }
    // Every smaller count was refuted: the stars of a vertex cover win.
    let sets = tau.cover.iter().map(|&v| ArcSet::out_star(g, v)).collect();
    Ok(DimOutcome::Solved(DimResult {
        dimension: ub,
        covering: FlatCovering::new(sets),
        lower_bound_witness: witness,
        nodes_explored: nodes,
    }))
}

struct Class<T> {
    sys: ArcSystem<T>,
    mask: u128,
    arcs: Vec<Arc>,
    labels: Vec<T>,
}

impl<T: Scalar> Class<T> {
    fn new(mg: &MetricGraph<T>) -> Self {
        Self {
            sys: ArcSystem::new(mg),
            mask: 0,
            arcs: Vec::new(),
            labels: vec![T::zero(); mg.n()],
        }
    }

    fn replace_arcs(&mut self, arcs: Vec<Arc>) {
        for &a in &self.arcs {
            self.sys.set_flat(a, false);
        }
        for &a in &arcs {
            self.sys.set_flat(a, true);
        }
        self.arcs = arcs;
    }
}

type Orientation<T> = Option<(Vec<Arc>, Vec<T>)>;

struct Undo<T> {
    arcs: Vec<Arc>,
    labels: Vec<T>,
    mask: u128,
}

struct Search<'a, T> {
    mg: &'a MetricGraph<T>,
    k: usize,
    order: &'a [EdgeId],
    incompat: &'a [u128],
    classes: Vec<Class<T>>,
    opened: usize,
    memo: &'a mut HashMap<u128, Orientation<T>>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl<T: Scalar> Search<'_, T> {
    fn dfs(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let e = self.order[i];
        let reach = (self.opened + 1).min(self.k);
        for j in 0..reach {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.exhausted = true;
                return false;
            }
            let Some(undo) = self.try_add(j, e) else {
                continue;
            };
            let opening = j == self.opened;
            if opening {
                self.opened += 1;
            }
            if self.forward_ok(i + 1) && self.dfs(i + 1) {
                return true;
            }
            if self.exhausted {
                return false;
            }
            if opening {
                self.opened -= 1;
            }
            self.undo(j, undo);
        }
        false
    }

    /// Once all classes are open, every later edge needs a class holding
    /// nothing incompatible with it.
    fn forward_ok(&self, from: usize) -> bool {
        if self.opened < self.k {
            return true;
        }
        self.order[from..].iter().all(|&f| {
            self.classes
                .iter()
                .any(|c| self.incompat[f] & c.mask == 0)
        })
    }

    fn try_add(&mut self, j: usize, e: EdgeId) -> Option<Undo<T>> {
        let bit = 1u128 << e;
        let mg = self.mg;
        let c = &mut self.classes[j];
        if self.incompat[e] & c.mask != 0 {
            return None;
        }
        let prev = Undo {
            arcs: c.arcs.clone(),
            labels: c.labels.clone(),
            mask: c.mask,
        };
        let dirs: &[bool] = if mg.d(e).is_zero() { &[true] } else { &[true, false] };
        for &fwd in dirs {
            let a = Arc::new(e, fwd);
            c.sys.set_flat(a, true);
            if let Ok(p) = c.sys.solve(Some(&c.labels)) {
                c.arcs.push(a);
                c.labels = p;
                c.mask |= bit;
                return Some(prev);
            }
            c.sys.set_flat(a, false);
        }
        if c.mask == 0 {
            return None;
        }
        let mask = c.mask | bit;
        let found = self
            .memo
            .entry(mask)
            .or_insert_with(|| {
                let edges: Vec<EdgeId> = (0..mg.m()).filter(|&f| mask >> f & 1 == 1).collect();
                let mut fresh = ArcSystem::new(mg);
                let zeros = vec![T::zero(); mg.n()];
                orient(&mut fresh, mg, &edges, &zeros, true)
                    .map(|(set, labels)| (set.iter().collect(), labels))
            })
            .clone();
        let (arcs, labels) = found?;
        c.replace_arcs(arcs);
        c.labels = labels;
        c.mask = mask;
        Some(prev)
    }

    fn undo(&mut self, j: usize, u: Undo<T>) {
        let c = &mut self.classes[j];
        c.replace_arcs(u.arcs);
        c.labels = u.labels;
        c.mask = u.mask;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_cover::{assemble_embedding, verify_linf};
    use crate::graph_core::generators::{certificate, complete, cycle, path, Family};
    use crate::graph_core::Graph;
    use crate::scalar::rat;

    fn dim(mg: &MetricGraph<Rational>) -> DimResult {
        let r = exact_dim(mg, &Budget::default()).unwrap().solved().unwrap();
        let emb = assemble_embedding(mg, &r.covering).unwrap();
        assert!(verify_linf(mg, &emb).is_valid());
        assert_eq!(emb.dimension(), r.dimension);
        r
    }

    #[test]
    fn small_values() {
        assert_eq!(dim(&MetricGraph::uniform(complete(3).unwrap(), rat(1))).dimension, 2);
        assert_eq!(dim(&MetricGraph::uniform(complete(4).unwrap(), rat(1))).dimension, 2);
        assert_eq!(dim(&MetricGraph::uniform(path(5).unwrap(), rat(3))).dimension, 1);
        assert_eq!(dim(&MetricGraph::uniform(cycle(4).unwrap(), rat(1))).dimension, 1);
        assert_eq!(dim(&MetricGraph::uniform(cycle(5).unwrap(), rat(1))).dimension, 2);
    }

    #[test]
    fn s2_certificate() {
        let c = certificate(Family::S, 2).unwrap();
        let r = dim(&c.metric);
        assert_eq!(r.dimension, 3);
        assert_eq!(r.lower_bound_witness.len(), 3);
    }

    #[test]
    fn edgeless_is_zero() {
        let g = Graph::from_names::<&str>(&["a"], &[]).unwrap();
        let r = exact_dim(&MetricGraph::<Rational>::uniform(g, rat(1)), &Budget::default()).unwrap();
        assert_eq!(r.dimension(), Some(0));
    }

    #[test]
    fn budget_and_cap() {
        let c = certificate(Family::S, 2).unwrap();
        let tight = Budget {
            max_nodes: 2,
            max_class_count: 64,
        };
        let out = exact_dim(&c.metric, &tight).unwrap();
        let (lb, ub) = out.interval();
        assert!(out.dimension().is_none() && lb <= 3 && 3 <= ub);
        let capped = Budget {
            max_nodes: 1_000_000,
            max_class_count: 2,
        };
        assert!(matches!(
            exact_dim(&c.metric, &capped).unwrap(),
            DimOutcome::BudgetExhausted { lb: 3, .. }
        ));
        let bad = MetricGraph::new_unchecked(complete(3).unwrap(), vec![rat(1), rat(1), rat(5)]);
        assert!(exact_dim(&bad, &Budget::default()).is_err());
    }

    #[test]
    fn integer_scalars_agree() {
        let mg = MetricGraph::uniform(complete(5).unwrap(), 1i64);
        let q = MetricGraph::uniform(complete(5).unwrap(), rat(1));
        assert_eq!(
            exact_dim(&mg, &Budget::default()).unwrap().dimension(),
            exact_dim(&q, &Budget::default()).unwrap().dimension()
        );
    }
}
