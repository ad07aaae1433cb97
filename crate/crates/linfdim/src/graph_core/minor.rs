//! Minor models and a backtracking search for them on small hosts.

use std::ops::ControlFlow;

use super::graph::{Graph, VertexId};
use crate::error::{Error, Result};

/// `images[a]` is the set of host vertices representing pattern vertex `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub host: Graph,
    pub pattern: Graph,
    pub images: Vec<Vec<VertexId>>,
}

impl MinorModel {
    /// Image of a pattern vertex, as host vertex names.
    pub fn image_names(&self, a: VertexId) -> Vec<&str> {
        self.images[a].iter().map(|&v| self.host.name(v)).collect()
    }
}

/// Checks that the images are nonempty, disjoint and connected, and that
/// every pattern edge is realized by a host edge between the two images.
pub fn verify_model(m: &MinorModel) -> bool {
    if m.images.len() != m.pattern.n() {
        return false;
    }
    let mut owner = vec![usize::MAX; m.host.n()];
    for (a, img) in m.images.iter().enumerate() {
        for &v in img {
            if v >= m.host.n() || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = a;
        }
        if !m.host.induces_connected(img) {
            return false;
        }
    }
    m.pattern.edges().iter().all(|&(a, b)| {
        m.images[a].iter().any(|&x| {
            m.host
                .neighbors(x)
                .iter()
                .any(|&y| owner[y] == b)
        })
    })
}

#[derive(Clone, Debug)]
pub struct MinorSearchConfig {
    pub max_pattern: usize,
    pub max_host: usize,
    /// Candidate images tried before giving up.
    pub budget: u64,
}

impl Default for MinorSearchConfig {
    fn default() -> Self {
        Self {
            max_pattern: 8,
            max_host: 14,
            budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorSearch {
    Found(MinorModel),
    NotFound,
    BudgetExhausted,
}

pub fn find_minor_model(
    host: &Graph,
    pattern: &Graph,
    config: &MinorSearchConfig,
) -> Result<MinorSearch> {
    if pattern.n() > config.max_pattern {
        return Err(Error::CapExceeded {
            what: "pattern",
            limit: config.max_pattern,
            actual: pattern.n(),
        });
    }
    if host.n() > config.max_host {
        return Err(Error::CapExceeded {
            what: "host",
            limit: config.max_host,
            actual: host.n(),
        });
    }
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(MinorSearch::NotFound);
    }
    let order = placement_order(pattern);
    let mut search = Search {
        host,
        pattern,
        order: &order,
        owner: vec![usize::MAX; host.n()],
        images: vec![Vec::new(); pattern.n()],
        unused: host.n(),
        budget: config.budget,
        exhausted: false,
    };
    match search.place(0) {
        ControlFlow::Break(()) => Ok(MinorSearch::Found(MinorModel {
            host: host.clone(),
            pattern: pattern.clone(),
            images: search.images,
        })),
        ControlFlow::Continue(()) if search.exhausted => Ok(MinorSearch::BudgetExhausted),
        ControlFlow::Continue(()) => Ok(MinorSearch::NotFound),
    }
}

/// Highest degree first, then greedily the vertex with most placed neighbours.
fn placement_order(p: &Graph) -> Vec<VertexId> {
    let mut placed = vec![false; p.n()];
    let mut order = Vec::with_capacity(p.n());
    while order.len() < p.n() {
        let next = (0..p.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = p.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (back, p.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: &'a [VertexId],
    owner: Vec<usize>,
    images: Vec<Vec<VertexId>>,
    unused: usize,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn place(&mut self, idx: usize) -> ControlFlow<()> {
        if idx == self.order.len() {
            return ControlFlow::Break(());
        }
        let a = self.order[idx];
        let still_needed = self.order.len() - idx - 1;
        if self.unused < still_needed + 1 {
            return ControlFlow::Continue(());
        }
        let max_size = self.unused - still_needed;
        for root in 0..self.host.n() {
            if self.owner[root] != usize::MAX {
                continue;
            }
            let mut sub = vec![root];
            let ext: Vec<VertexId> = self
                .host
                .neighbors(root)
                .iter()
                .copied()
                .filter(|&u| u > root && self.owner[u] == usize::MAX)
                .collect();
            self.extend(idx, a, root, &mut sub, ext, max_size)?;
            if self.exhausted {
                return ControlFlow::Continue(());
            }
        }
        ControlFlow::Continue(())
    }

    /// Enumerates connected unused sets whose smallest vertex is `root`
    /// (each exactly once), trying each as the image of `a`.
    fn extend(
        &mut self,
        idx: usize,
        a: VertexId,
        root: VertexId,
        sub: &mut Vec<VertexId>,
        mut ext: Vec<VertexId>,
        max_size: usize,
    ) -> ControlFlow<()> {
        if self.budget == 0 {
            self.exhausted = true;
            return ControlFlow::Continue(());
        }
        self.budget -= 1;
        if self.realizes_back_edges(a, sub) {
            for &v in sub.iter() {
                self.owner[v] = a;
            }
            self.images[a] = sub.clone();
            self.unused -= sub.len();
            self.place(idx + 1)?;
            self.unused += sub.len();
            self.images[a].clear();
            for &v in sub.iter() {
                self.owner[v] = usize::MAX;
            }
            if self.exhausted {
                return ControlFlow::Continue(());
            }
        }
        if sub.len() == max_size {
            return ControlFlow::Continue(());
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in self.host.neighbors(w) {
                if u > root
                    && self.owner[u] == usize::MAX
                    && !sub.contains(&u)
                    && u != w
                    && !sub.iter().any(|&s| self.host.has_edge(s, u))
                    && !next.contains(&u)
                {
                    next.push(u);
                }
            }
            sub.push(w);
            self.extend(idx, a, root, sub, next, max_size)?;
            sub.pop();
            if self.exhausted {
                return ControlFlow::Continue(());
            }
        }
        ControlFlow::Continue(())
    }

    fn realizes_back_edges(&self, a: VertexId, sub: &[VertexId]) -> bool {
        self.pattern.neighbors(a).iter().all(|&b| {
            if self.images[b].is_empty() {
                return true;
            }
            sub.iter().any(|&x| {
                self.host
                    .neighbors(x)
                    .iter()
                    .any(|&y| self.owner[y] == b)
            })
        })
    }
}

/// Bijection `map` with `a ~ b` in `pattern` iff `map[a] ~ map[b]` in
/// `host`, found by degree-filtered backtracking.
pub fn find_isomorphism(pattern: &Graph, host: &Graph) -> Option<Vec<VertexId>> {
    if pattern.n() != host.n() || pattern.m() != host.m() {
        return None;
    }
    let dp: Vec<usize> = (0..pattern.n()).map(|v| pattern.degree(v)).collect();
    let dh: Vec<usize> = (0..host.n()).map(|v| host.degree(v)).collect();
    let (mut sp, mut sh) = (dp.clone(), dh.clone());
    sp.sort_unstable();
    sh.sort_unstable();
    if sp != sh {
        return None;
    }
    // Place pattern vertices in BFS order so each has a placed neighbour.
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    for s in 0..pattern.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for &w in pattern.neighbors(order[i]) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    if iso_rec(pattern, host, &order, 0, &dp, &dh, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_rec(
    p: &Graph,
    h: &Graph,
    order: &[VertexId],
    i: usize,
    dp: &[usize],
    dh: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let a = order[i];
    for x in 0..h.n() {
        if used[x] || dh[x] != dp[a] {
            continue;
        }
        let consistent = order[..i]
            .iter()
            .all(|&b| p.has_edge(a, b) == h.has_edge(x, map[b]));
        if !consistent {
            continue;
        }
        map[a] = x;
        used[x] = true;
        if iso_rec(p, h, order, i + 1, dp, dh, map, used) {
            return true;
        }
        used[x] = false;
        map[a] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::generators::{complete, square_grid, tri_grid, wheel};

    #[test]
    fn wheel_contains_k4() {
        let r = find_minor_model(&wheel(4).unwrap(), &complete(4).unwrap(), &Default::default())
            .unwrap();
        match r {
            MinorSearch::Found(m) => assert!(verify_model(&m)),
            other => panic!("expected a model, got {other:?}"),
        }
    }

    #[test]
    fn k5_not_in_k4() {
        let r = find_minor_model(&complete(4).unwrap(), &complete(5).unwrap(), &Default::default())
            .unwrap();
        assert_eq!(r, MinorSearch::NotFound);
    }

    #[test]
    fn grid_contains_triangular_grid() {
        let cfg = MinorSearchConfig {
            max_host: 16,
            ..Default::default()
        };
        let r = find_minor_model(&square_grid(4).unwrap(), &tri_grid(3).unwrap(), &cfg).unwrap();
        match r {
            MinorSearch::Found(m) => assert!(verify_model(&m)),
            other => panic!("expected a model, got {other:?}"),
        }
    }

    #[test]
    fn caps_refuse() {
        assert!(find_minor_model(&complete(4).unwrap(), &complete(9).unwrap(), &Default::default())
            .is_err());
        assert!(find_minor_model(&square_grid(4).unwrap(), &complete(3).unwrap(), &Default::default())
            .is_err());
    }

    #[test]
    fn verify_rejects_bad_models() {
        let host = complete(4).unwrap();
        let pattern = complete(3).unwrap();
        let overlapping = MinorModel {
            host: host.clone(),
            pattern: pattern.clone(),
            images: vec![vec![0, 1], vec![1], vec![2]],
        };
        assert!(!verify_model(&overlapping));
        let c4 = crate::graph_core::generators::cycle(4).unwrap();
        let missing = MinorModel {
            host: c4,
            pattern,
            images: vec![vec![0], vec![1], vec![3]],
        };
        assert!(!verify_model(&missing));
    }

    #[test]
    fn budget_is_reported() {
        let cfg = MinorSearchConfig {
            budget: 3,
            ..Default::default()
        };
        let r = find_minor_model(&wheel(6).unwrap(), &complete(5).unwrap(), &cfg).unwrap();
        assert_eq!(r, MinorSearch::BudgetExhausted);
    }

    #[test]
    fn isomorphism_of_relabelled_graphs() {
        let g = crate::graph_core::generators::petersen();
        let h = g.relabel(|s| format!("x{s}")).unwrap();
        let perm: Vec<usize> = (0..10).rev().collect();
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let shuffled = Graph::from_index_edges(10, &edges).unwrap();
        let map = find_isomorphism(&g, &shuffled).unwrap();
        for &(u, v) in g.edges() {
            assert!(shuffled.has_edge(map[u], map[v]));
        }
        assert!(find_isomorphism(&g, &h).is_some());
        let w = crate::graph_core::generators::wheel(4).unwrap();
        let l = crate::graph_core::generators::ladder(3).unwrap();
        assert!(find_isomorphism(&w, &l).is_none());
    }
}
