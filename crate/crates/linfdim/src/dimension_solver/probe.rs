use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::exact::{exact_dim, Budget, DimOutcome, DimResult};
use crate::error::Result;
use crate::flat_cover::{Arc, ArcSet, FlatCovering};
use crate::graph_core::{
    certificate, family_graph, find_isomorphism, random_metric, Family, Graph, MetricGraph,
};
use crate::scalar::{Rational, Scalar};
use crate::structure::blocks;

/// Solves each block separately. Potentials of different blocks can be
/// translated to agree on cut vertices, so the `i`-th sets of all blocks
/// merge into one flat set.
pub fn dim_blocks<S: Scalar>(mg: &MetricGraph<S>, budget: &Budget) -> Result<DimOutcome> {
    let g = mg.graph();
    let bd = blocks(g);
    let mut dimension = 0;
    let mut sets: Vec<ArcSet> = Vec::new();
    let mut witness = Vec::new();
    let mut nodes = 0;
    let (mut lb, mut ub, mut short) = (0, 0, false);
    for block in &bd.blocks {
        let (sub, ids) = mg.edge_subgraph(block);
        match exact_dim(&sub, budget)? {
            DimOutcome::Solved(r) => {
                nodes += r.nodes_explored;
                lb = lb.max(r.dimension);
                ub = ub.max(r.dimension);
                if r.dimension > dimension {
                    dimension = r.dimension;
                    witness = r.lower_bound_witness.iter().map(|&e| ids[e]).collect();
                }
                let sg = sub.graph();
                for (i, set) in r.covering.sets.iter().enumerate() {
                    if sets.len() <= i {
                        sets.push(ArcSet::new());
                    }
                    for a in set.iter() {
                        let t = g.vertex(sg.name(a.tail(sg))).unwrap();
                        let h = g.vertex(sg.name(a.head(sg))).unwrap();
                        sets[i].insert(Arc::between(g, t, h).unwrap());
                    }
                }
            }
            DimOutcome::BudgetExhausted {
                lb: l,
                ub: u,
                nodes_explored,
            } => {
                nodes += nodes_explored;
                lb = lb.max(l);
                ub = ub.max(u);
                short = true;
            }
        }
    }
    if short {
        return Ok(DimOutcome::BudgetExhausted {
            lb,
            ub,
            nodes_explored: nodes,
        });
    }
    witness.sort_unstable();
    Ok(DimOutcome::Solved(DimResult {
        dimension,
        covering: FlatCovering::new(sets),
        lower_bound_witness: witness,
        nodes_explored: nodes,
    }))
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub best_dimension: usize,
    pub best_metric: MetricGraph<Rational>,
    /// Solved dimension per tried metric, certificate first when present.
    pub dimensions: Vec<Option<usize>>,
    pub family: Option<(Family, usize)>,
}

/// The family and order of `g` among the certificate families, up to
/// isomorphism, with the certificate distances moved onto `g`.
pub fn recognize_family(g: &Graph) -> Option<(Family, usize, MetricGraph<Rational>)> {
    for family in [Family::S, Family::P, Family::F, Family::N] {
        for k in 1..=8 {
            let Ok(pattern) = family_graph(family, k) else {
                continue;
            };
            if pattern.n() != g.n() || pattern.m() != g.m() {
                continue;
            }
            let Some(map) = find_isomorphism(&pattern, g) else {
                continue;
            };
            let cert = certificate(family, k).ok()?;
            let mut d = vec![Rational::default(); g.m()];
            for (e, &(a, b)) in cert.metric.graph().edges().iter().enumerate() {
                d[g.edge_id(map[a], map[b]).unwrap()] = cert.metric.d(e).clone();
            }
            return Some((family, k, MetricGraph::new_unchecked(g.clone(), d)));
        }
    }
    None
}

/// Largest dimension seen over random distance functions on `g`, plus the
/// certificate distances when `g` is a recognized family. A lower bound on
/// the supremum only.
pub fn sup_dim_probe(g: &Graph, trials: usize, seed: u64, budget: &Budget) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deck = Vec::new();
    let mut family = None;
    if let Some((f, k, mg)) = recognize_family(g) {
        family = Some((f, k));
        deck.push(mg);
    }
    for _ in 0..trials {
        deck.push(random_metric(g, 12, &mut rng));
    }
    let mut best: Option<(usize, MetricGraph<Rational>)> = None;
    let mut dimensions = Vec::with_capacity(deck.len());
    for mg in deck {
        let dim = exact_dim(&mg, budget)?.dimension();
        dimensions.push(dim);
        if let Some(x) = dim {
            if best.as_ref().is_none_or(|(b, _)| x > *b) {
                best = Some((x, mg));
            }
        }
    }
    let (best_dimension, best_metric) =
        best.unwrap_or_else(|| (0, MetricGraph::uniform(g.clone(), Rational::from_integer(1.into()))));
    Ok(ProbeReport {
        best_dimension,
        best_metric,
        dimensions,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_cover::{assemble_embedding, verify_linf};
    use crate::graph_core::generators::{complete, ladder, path};
    use crate::graph_core::{graph_sum, SumKind};
    use crate::scalar::rat;

    #[test]
    fn bowtie_and_tree() {
        let g = Graph::from_names(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e"), ("c", "e")],
        )
        .unwrap();
        let mg = MetricGraph::uniform(g, rat(1));
        let r = dim_blocks(&mg, &Budget::default()).unwrap().solved().unwrap();
        assert_eq!(r.dimension, 2);
        let emb = assemble_embedding(&mg, &r.covering).unwrap();
        assert!(verify_linf(&mg, &emb).is_valid());
        let t = MetricGraph::uniform(path(6).unwrap(), rat(2));
        assert_eq!(dim_blocks(&t, &Budget::default()).unwrap().dimension(), Some(1));
    }

    #[test]
    fn certificate_glued_to_triangle() {
        let c = certificate(Family::S, 2).unwrap();
        let k3 = complete(3).unwrap().relabel(|s| format!("t{s}")).unwrap();
        let k3 = k3.relabel(|s| if s == "tv1" { "v".into() } else { s.into() }).unwrap();
        let g = graph_sum(c.metric.graph(), &k3, &SumKind::OneSum("v".into())).unwrap();
        let d: Vec<Rational> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                c.metric
                    .d_by_names(g.name(u), g.name(v))
                    .cloned()
                    .unwrap_or_else(|| rat(1))
            })
            .collect();
        let mg = MetricGraph::new(g, d).unwrap();
        let r = dim_blocks(&mg, &Budget::default()).unwrap().solved().unwrap();
        assert_eq!(r.dimension, 3);
        let emb = assemble_embedding(&mg, &r.covering).unwrap();
        assert!(verify_linf(&mg, &emb).is_valid());
    }

    #[test]
    fn probes() {
        let k4 = sup_dim_probe(&complete(4).unwrap(), 10, 1, &Budget::default()).unwrap();
        assert_eq!(k4.best_dimension, 2);
        let l4 = sup_dim_probe(&ladder(4).unwrap(), 10, 2, &Budget::default()).unwrap();
        assert!(l4.best_dimension <= 2);
        let s2 = family_graph(Family::S, 2).unwrap();
        let shuffled = s2.relabel(|s| format!("q{s}")).unwrap();
        let r = sup_dim_probe(&shuffled, 3, 3, &Budget::default()).unwrap();
        assert_eq!(r.family, Some((Family::S, 2)));
        assert_eq!(r.best_dimension, 3);
    }
}
