use std::fmt;

use super::flat::{is_flat, FlatVerdict};
use super::signed::{ArcSet, NegativeCycle};
use crate::graph_core::{EdgeId, MetricGraph, VertexId};
use crate::scalar::{max_of, Scalar};

/// Flat sets whose union covers every edge of the host.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlatCovering {
    pub sets: Vec<ArcSet>,
}

impl FlatCovering {
    pub fn new(sets: Vec<ArcSet>) -> Self {
        Self { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// `phi[v]` holds the coordinates of vertex `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinfEmbedding<S> {
    pub phi: Vec<Vec<S>>,
}

impl<S> LinfEmbedding<S> {
    pub fn dimension(&self) -> usize {
        self.phi.first().map_or(0, Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoveringDefect<S> {
    Malformed { set: usize, reason: String },
    NotFlat { set: usize, cycle: NegativeCycle<S> },
    Uncovered { edge: EdgeId },
}

impl<S: fmt::Display> fmt::Display for CoveringDefect<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringDefect::Malformed { set, reason } => write!(f, "set {set} is malformed: {reason}"),
            CoveringDefect::NotFlat { set, cycle } => {
                write!(f, "set {set} is not flat (cycle of weight {})", cycle.weight)
            }
            CoveringDefect::Uncovered { edge } => write!(f, "edge {edge} is not covered"),
        }
    }
}

impl<S: fmt::Debug + fmt::Display> std::error::Error for CoveringDefect<S> {}

/// Coordinate `i` of the embedding is the potential of `cov.sets[i]`.
pub fn assemble_embedding<S: Scalar>(
    mg: &MetricGraph<S>,
    cov: &FlatCovering,
) -> Result<LinfEmbedding<S>, CoveringDefect<S>> {
    if let Some(edge) = (0..mg.m()).find(|&e| !cov.sets.iter().any(|s| s.covers(e))) {
        return Err(CoveringDefect::Uncovered { edge });
    }
    let mut phi = vec![Vec::with_capacity(cov.len()); mg.n()];
    for (i, set) in cov.sets.iter().enumerate() {
        let verdict = is_flat(mg, set).map_err(|e| CoveringDefect::Malformed {
            set: i,
            reason: e.to_string(),
        })?;
        match verdict {
            FlatVerdict::Flat(p) => {
                for (v, x) in p.p.into_iter().enumerate() {
                    phi[v].push(x);
                }
            }
            FlatVerdict::NotFlat(cycle) => return Err(CoveringDefect::NotFlat { set: i, cycle }),
        }
    }
    Ok(LinfEmbedding { phi })
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinfVerdict<S> {
    Valid,
    /// Max-norm gap of `edge` differs from its length.
    Violated { edge: EdgeId, gap: S },
}

impl<S> LinfVerdict<S> {
    pub fn is_valid(&self) -> bool {
        matches!(self, LinfVerdict::Valid)
    }
}

pub fn linf_gap<S: Scalar>(emb: &LinfEmbedding<S>, u: VertexId, v: VertexId) -> S {
    emb.phi[u]
        .iter()
        .zip(&emb.phi[v])
        .fold(S::zero(), |acc, (a, b)| max_of(acc, (a.clone() - b.clone()).abs()))
}

/// Every edge must have max-norm gap exactly equal to its distance.
pub fn verify_linf<S: Scalar>(mg: &MetricGraph<S>, emb: &LinfEmbedding<S>) -> LinfVerdict<S> {
    if emb.phi.len() != mg.n() {
        return LinfVerdict::Violated {
            edge: 0,
            gap: S::zero(),
        };
    }
    for (e, &(u, v)) in mg.graph().edges().iter().enumerate() {
        let gap = linf_gap(emb, u, v);
        if gap != *mg.d(e) {
            return LinfVerdict::Violated { edge: e, gap };
        }
    }
    LinfVerdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_cover::signed::Arc;
    use crate::graph_core::{generators, Graph};
    use crate::scalar::{rat, Rational};

    fn k3() -> MetricGraph<Rational> {
        let g = Graph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        MetricGraph::uniform(g, rat(1))
    }

    #[test]
    fn triangle_in_two_dimensions() {
        let mg = k3();
        let g = mg.graph();
        let cov = FlatCovering::new(vec![
            ArcSet::out_star(g, 0),
            ArcSet::from_arcs([Arc::by_names(g, "b", "c").unwrap()]),
        ]);
        let emb = assemble_embedding(&mg, &cov).unwrap();
        assert_eq!(emb.dimension(), 2);
        assert!(verify_linf(&mg, &emb).is_valid());
    }

    #[test]
    fn single_edge_line() {
        let g = Graph::from_names(&["a", "b"], &[("a", "b")]).unwrap();
        let mg = MetricGraph::new(g, vec![crate::scalar::ratio(7, 3)]).unwrap();
        let cov = FlatCovering::new(vec![ArcSet::from_arcs([Arc::new(0, true)])]);
        let emb = assemble_embedding(&mg, &cov).unwrap();
        assert!(verify_linf(&mg, &emb).is_valid());
    }

    #[test]
    fn defects_are_named() {
        let mg = k3();
        let g = mg.graph();
        let partial = FlatCovering::new(vec![ArcSet::out_star(g, 0)]);
        assert_eq!(
            assemble_embedding(&mg, &partial),
            Err(CoveringDefect::Uncovered { edge: 1 })
        );
        let cyclic = ArcSet::from_arcs([
            Arc::by_names(g, "a", "b").unwrap(),
            Arc::by_names(g, "b", "c").unwrap(),
            Arc::by_names(g, "c", "a").unwrap(),
        ]);
        let bad = FlatCovering::new(vec![cyclic]);
        assert!(matches!(
            assemble_embedding(&mg, &bad),
            Err(CoveringDefect::NotFlat { set: 0, .. })
        ));
    }

    #[test]
    fn perturbation_is_caught() {
        let mg = k3();
        let g = mg.graph();
        let cov = FlatCovering::new(vec![
            ArcSet::out_star(g, 0),
            ArcSet::from_arcs([Arc::by_names(g, "b", "c").unwrap()]),
        ]);
        let mut emb = assemble_embedding(&mg, &cov).unwrap();
        emb.phi[2][0] = emb.phi[2][0].clone() + rat(5);
        assert!(!verify_linf(&mg, &emb).is_valid());
    }

    #[test]
    fn unit_square() {
        let c4 = generators::cycle(4).unwrap();
        let mg = MetricGraph::uniform(c4, rat(1));
        let emb = LinfEmbedding {
            phi: vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(0)],
                vec![rat(1), rat(1)],
                vec![rat(0), rat(1)],
            ],
        };
        assert!(verify_linf(&mg, &emb).is_valid());
    }
}
