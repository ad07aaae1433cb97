use crate::error::{Error, Result};
use crate::flat_cover::{incompatibility_graph, incompatible_exact, IncompatMode};
use crate::graph_core::{EdgeId, Graph, MetricGraph, VertexId};
use crate::scalar::Scalar;

/// `masks[e]` has bit `f` set when `e` and `f` are incompatible.
pub(crate) fn exact_incompat_masks<S: Scalar>(mg: &MetricGraph<S>) -> Result<Vec<u128>> {
    let g = mg.graph();
    let m = g.m();
    if m > 128 {
        return Err(Error::CapExceeded {
            what: "edge count",
            limit: 128,
            actual: m,
        });
    }
    let mut masks = vec![0u128; m];
    for e in 0..m {
        for f in e + 1..m {
            if !g.edges_adjacent(e, f) && incompatible_exact(mg, e, f)? {
                masks[e] |= 1 << f;
                masks[f] |= 1 << e;
            }
        }
    }
    Ok(masks)
}

/// Maximum clique of a graph on at most 128 vertices given by adjacency
/// masks. Returns the clique as a mask; nonempty whenever the graph is.
pub(crate) fn max_clique(adj: &[u128]) -> u128 {
    let all = if adj.len() == 128 {
        u128::MAX
    } else {
        (1u128 << adj.len()) - 1
    };
    let mut best = if adj.is_empty() { 0 } else { 1 };
    clique_rec(adj, 0, all, &mut best);
    best
}

fn clique_rec(adj: &[u128], current: u128, mut cand: u128, best: &mut u128) {
    if current.count_ones() > best.count_ones() {
        *best = current;
    }
    while cand != 0 {
        if current.count_ones() + color_bound(adj, cand) <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        clique_rec(adj, current | 1 << v, cand & adj[v], best);
    }
}

/// Greedy colouring of the candidates: an upper bound on any clique in them.
fn color_bound(adj: &[u128], mut cand: u128) -> u32 {
    let mut colors = 0;
    while cand != 0 {
        colors += 1;
        let mut free = cand;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= !(1 << v) & !adj[v];
            cand &= !(1 << v);
        }
    }
    colors
}

/// Largest set of pairwise incompatible edges found under `mode`. Exact
/// when at most 40 edges take part in some incompatible pair, greedy
/// beyond that.
pub fn lower_bound_incompat<S: Scalar>(
    mg: &MetricGraph<S>,
    mode: IncompatMode,
) -> Result<(usize, Vec<EdgeId>)> {
    if mg.m() == 0 {
        return Ok((0, Vec::new()));
    }
    let h = incompatibility_graph(mg, mode)?;
    let cand: Vec<VertexId> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    if cand.is_empty() {
        return Ok((1, vec![0]));
    }
    let witness = if cand.len() <= 40 {
        let pos = |v: VertexId| cand.iter().position(|&c| c == v);
        let adj: Vec<u128> = cand
            .iter()
            .map(|&v| {
                h.neighbors(v)
                    .iter()
                    .filter_map(|&w| pos(w))
                    .fold(0u128, |acc, i| acc | 1 << i)
            })
            .collect();
        let mask = max_clique(&adj);
        (0..cand.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| cand[i])
            .collect()
    } else {
        greedy_clique(&h, cand)
    };
    Ok((witness.len(), witness))
}

fn greedy_clique(h: &Graph, mut pool: Vec<VertexId>) -> Vec<VertexId> {
    let mut clique = Vec::new();
    while !pool.is_empty() {
        let deg = |v: VertexId| pool.iter().filter(|&&w| h.has_edge(v, w)).count();
        let v = *pool.iter().max_by_key(|&&v| (deg(v), std::cmp::Reverse(v))).unwrap();
        clique.push(v);
        pool.retain(|&w| h.has_edge(v, w));
    }
    clique.sort_unstable();
    clique
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub size: usize,
    pub cover: Vec<VertexId>,
    /// False when the 2-approximation was used.
    pub exact: bool,
}

/// Vertex cover number by branch and bound (at most 30 vertices), or the
/// endpoints of a maximal matching beyond that.
pub fn upper_bound_tau(g: &Graph) -> VertexCover {
    let n = g.n();
    if n > 30 {
        let mut taken = vec![false; n];
        for &(u, v) in g.edges() {
            if !taken[u] && !taken[v] {
                taken[u] = true;
                taken[v] = true;
            }
        }
        let cover: Vec<VertexId> = (0..n).filter(|&v| taken[v]).collect();
        return VertexCover {
            size: cover.len(),
            cover,
            exact: false,
        };
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |a, &w| a | 1 << w))
        .collect();
    let alive = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut best = alive;
    cover_rec(&adj, alive, 0, &mut best);
    let cover: Vec<VertexId> = (0..n).filter(|&v| best >> v & 1 == 1).collect();
    VertexCover {
        size: cover.len(),
        cover,
        exact: true,
    }
}

fn cover_rec(adj: &[u64], alive: u64, taken: u64, best: &mut u64) {
    let mut max_deg = 0;
    let mut pick = usize::MAX;
    let mut edges2 = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & alive).count_ones();
        edges2 += d;
        if d > max_deg {
            max_deg = d;
            pick = v;
        }
    }
    if max_deg == 0 {
        if taken.count_ones() < best.count_ones() {
            *best = taken;
        }
        return;
    }
    // Each chosen vertex covers at most max_deg of the remaining edges.
    let need = (edges2 / 2).div_ceil(max_deg);
    if taken.count_ones() + need >= best.count_ones() {
        return;
    }
    let v = pick;
    let nb = adj[v] & alive;
    cover_rec(adj, alive & !(1 << v), taken | 1 << v, best);
    cover_rec(adj, alive & !(1 << v) & !nb, taken | nb, best);
}
