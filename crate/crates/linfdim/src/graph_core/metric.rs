use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::graph::{EdgeId, Graph, VertexId};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// A graph together with a distance function on its edges.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph<S> {
    graph: Graph,
    d: Vec<S>,
}

/// Outcome of [`validate_metric`].
#[derive(Clone, Debug, PartialEq)]
pub enum MetricVerdict<S> {
    Valid,
    /// `path` runs between the endpoints of `edge` and weighs `weight < d(edge)`.
    Violated {
        edge: EdgeId,
        path: Vec<VertexId>,
        weight: S,
    },
}

impl<S> MetricVerdict<S> {
    pub fn is_valid(&self) -> bool {
        matches!(self, MetricVerdict::Valid)
    }
}

/// Checks that every edge weight equals the weighted shortest-path distance
/// between its endpoints.
pub fn validate_metric<S: Scalar>(g: &Graph, d: &[S]) -> Result<MetricVerdict<S>> {
    validate_metric_with_slack(g, d, &S::zero())
}

/// As [`validate_metric`], but a path only counts as a violation when it is
/// shorter than the edge by more than `slack`. Meant for floating weights.
pub fn validate_metric_with_slack<S: Scalar>(
    g: &Graph,
    d: &[S],
    slack: &S,
) -> Result<MetricVerdict<S>> {
    if d.len() != g.m() {
        return invalid(format!(
            "distance function has {} weights for {} edges",
            d.len(),
            g.m()
        ));
    }
    if let Some(e) = d.iter().position(|x| x.is_negative()) {
        let (a, b) = g.edge_names(e);
        return invalid(format!("negative distance on edge {a}-{b}"));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (dist, pred) = dijkstra(g, d, u);
        let short = dist[v].clone().expect("edge endpoint reachable");
        if short.clone() + slack.clone() < d[e] {
            let mut path = vec![v];
            let mut x = v;
            while x != u {
                x = pred[x].expect("on a shortest path");
                path.push(x);
            }
            path.reverse();
            return Ok(MetricVerdict::Violated {
                edge: e,
                path,
                weight: short,
            });
        }
    }
    Ok(MetricVerdict::Valid)
}

/// Single-source shortest paths with nonnegative weights (quadratic Dijkstra,
/// inputs are small). Returns distances and predecessors.
pub fn dijkstra<S: Scalar>(
    g: &Graph,
    d: &[S],
    source: VertexId,
) -> (Vec<Option<S>>, Vec<Option<VertexId>>) {
    let n = g.n();
    let mut dist: Vec<Option<S>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = Some(S::zero());
    loop {
        let mut best: Option<VertexId> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(dv) = &dist[v] {
                if best.map_or(true, |b| dist[b].as_ref().unwrap() > dv) {
                    best = Some(v);
                }
            }
        }
        let Some(v) = best else { break };
        done[v] = true;
        let dv = dist[v].clone().unwrap();
        for &w in g.neighbors(v) {
            if done[w] {
                continue;
            }
            let e = g.edge_id(v, w).unwrap();
            let cand = dv.clone() + d[e].clone();
            if dist[w].as_ref().map_or(true, |dw| cand < *dw) {
                dist[w] = Some(cand);
                pred[w] = Some(v);
            }
        }
    }
    (dist, pred)
}

/// All-pairs shortest-path distances (`None` when disconnected).
pub fn all_pairs<S: Scalar>(g: &Graph, d: &[S]) -> Vec<Vec<Option<S>>> {
    (0..g.n()).map(|s| dijkstra(g, d, s).0).collect()
}

/// Replaces every edge weight by the shortest-path distance between its
/// endpoints. The result is always a valid distance function.
pub fn metric_closure<S: Scalar>(g: &Graph, w: &[S]) -> MetricGraph<S> {
    let d = g
        .edges()
        .iter()
        .map(|&(u, v)| dijkstra(g, w, u).0[v].clone().unwrap())
        .collect();
    MetricGraph::new_unchecked(g.clone(), d)
}

/// Random valid distance function: integer weights in `1..=max_weight`,
/// then closed under shortest paths.
pub fn random_metric<R: Rng>(g: &Graph, max_weight: i64, rng: &mut R) -> MetricGraph<BigRational> {
    let w: Vec<BigRational> = (0..g.m())
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=max_weight))))
        .collect();
    metric_closure(g, &w)
}

impl<S: Scalar> MetricGraph<S> {
    /// Validates `d` before building.
    pub fn new(graph: Graph, d: Vec<S>) -> Result<Self> {
        match validate_metric(&graph, &d)? {
            MetricVerdict::Valid => Ok(Self { graph, d }),
            MetricVerdict::Violated { edge, weight, .. } => {
                let (a, b) = graph.edge_names(edge);
                invalid(format!(
                    "d({a}{b}) = {} exceeds the path distance {weight}",
                    d[edge]
                ))
            }
        }
    }

    /// Builds without validation. Callers vouch for `d`.
    pub fn new_unchecked(graph: Graph, d: Vec<S>) -> Self {
        assert_eq!(graph.m(), d.len(), "one weight per edge");
        Self { graph, d }
    }

    /// Every edge weighted `value`.
    pub fn uniform(graph: Graph, value: S) -> Self {
        let d = vec![value; graph.m()];
        Self { graph, d }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self, e: EdgeId) -> &S {
        &self.d[e]
    }

    pub fn distances(&self) -> &[S] {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn validate(&self) -> Result<MetricVerdict<S>> {
        validate_metric(&self.graph, &self.d)
    }

    /// Distance of the edge between two named vertices.
    pub fn d_by_names(&self, a: &str, b: &str) -> Option<&S> {
        self.graph.edge_by_names(a, b).map(|e| &self.d[e])
    }

    /// Multiplies every distance by `factor`.
    pub fn scaled(&self, factor: &S) -> Self {
        let d = self.d.iter().map(|x| x.clone() * factor.clone()).collect();
        Self {
            graph: self.graph.clone(),
            d,
        }
    }

    /// Restriction to a subgraph given by vertex ids (induced).
    pub fn induced(&self, keep: &[VertexId]) -> Self {
        let (sub, map) = self.graph.induced(keep);
        let d = sub
            .edges()
            .iter()
            .map(|&(u, v)| {
                let e = self.graph.edge_id(map[u], map[v]).unwrap();
                self.d[e].clone()
            })
            .collect();
        Self { graph: sub, d }
    }

    /// Restriction to an edge subset, keeping only vertices they touch.
    /// Returns the metric graph and the original id of each new edge.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> (Self, Vec<EdgeId>) {
        let mut g = Graph::new();
        let mut d = Vec::new();
        for &e in edges {
            let (a, b) = self.graph.edge_names(e);
            let u = g.ensure_vertex(a);
            let v = g.ensure_vertex(b);
            g.add_edge(u, v).expect("distinct edges");
            d.push(self.d[e].clone());
        }
        (Self { graph: g, d }, edges.to_vec())
    }

    /// Shortest-path distance between two vertices.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<S> {
        dijkstra(&self.graph, &self.d, u).0[v].clone()
    }

    pub fn all_pairs(&self) -> Vec<Vec<Option<S>>> {
        all_pairs(&self.graph, &self.d)
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MetricGraph<T> {
        MetricGraph {
            graph: self.graph.clone(),
            d: self.d.iter().map(f).collect(),
        }
    }
}

impl MetricGraph<BigRational> {
    /// Rescales to integer weights by the lcm of the denominators and
    /// converts to `i64` when all path sums stay far from overflow.
    /// Flatness of arc sets is unchanged by positive scaling.
    pub fn to_scaled_i64(&self) -> Option<MetricGraph<i64>> {
        let mut l = BigInt::one();
        for x in &self.d {
            l = l.lcm(x.denom());
        }
        let mut total = BigInt::zero();
        let mut d = Vec::with_capacity(self.d.len());
        for x in &self.d {
            let v = x.numer() * (&l / x.denom());
            total += &v;
            d.push(v.to_i64()?);
        }
        if total.bits() > 60 {
            return None;
        }
        Some(MetricGraph {
            graph: self.graph.clone(),
            d,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn triangle() -> Graph {
        Graph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    #[test]
    fn unit_triangle_is_valid() {
        let d = vec![rat(1); 3];
        assert!(validate_metric(&triangle(), &d).unwrap().is_valid());
    }

    #[test]
    fn long_edge_has_witness() {
        let d = vec![rat(1), rat(1), rat(3)];
        match validate_metric(&triangle(), &d).unwrap() {
            MetricVerdict::Violated { edge, path, weight } => {
                assert_eq!(edge, 2);
                assert_eq!(weight, rat(2));
                assert_eq!(path, vec![0, 1, 2]);
            }
            MetricVerdict::Valid => panic!("should be invalid"),
        }
    }

    #[test]
    fn missing_weight_is_input_error() {
        assert!(validate_metric(&triangle(), &[rat(1)]).is_err());
    }

    #[test]
    fn closure_is_valid() {
        let d = vec![rat(5), rat(1), rat(1)];
        let mg = metric_closure(&triangle(), &d);
        assert_eq!(mg.d(0), &rat(2));
        assert!(mg.validate().unwrap().is_valid());
    }

    #[test]
    fn scaling_to_integers() {
        let d = vec![
            crate::scalar::ratio(1, 2),
            crate::scalar::ratio(1, 3),
            crate::scalar::ratio(1, 2),
        ];
        let mg = MetricGraph::new(triangle(), d).unwrap();
        assert_eq!(mg.to_scaled_i64().unwrap().distances(), &[3, 2, 3]);
    }
}
