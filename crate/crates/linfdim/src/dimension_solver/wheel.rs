use super::exact::{exact_dim, Budget, DimOutcome};
use crate::error::{invalid, Error, Result};
use crate::flat_cover::FlatCovering;
use crate::graph_core::{Graph, MetricGraph, VertexId};
use crate::scalar::Scalar;

/// A vertex adjacent to all others whose removal leaves a cycle.
pub fn wheel_hub(g: &Graph) -> Option<VertexId> {
    if g.n() < 4 {
        return None;
    }
    (0..g.n()).find(|&h| g.degree(h) == g.n() - 1 && g.without_vertices(&[h]).is_cycle())
}

/// A flat covering of a wheel with at most four sets.
pub fn wheel_cover<S: Scalar>(mg: &MetricGraph<S>) -> Result<FlatCovering> {
    if wheel_hub(mg.graph()).is_none() {
        return invalid("host is not a wheel");
    }
    let budget = Budget {
        max_nodes: 50_000_000,
        max_class_count: 4,
    };
    match exact_dim(mg, &budget)? {
        DimOutcome::Solved(r) => Ok(r.covering),
        DimOutcome::BudgetExhausted { lb, ub, .. } => Err(Error::Verification(format!(
            "no covering with at most 4 sets found (dimension in [{lb}, {ub}])"
        ))),
    }
}
