//! Fan-reduction and twin-class trimming.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Error, Result};
use crate::graph_core::{Graph, VertexId};

/// One applied reduction, by vertex names in the graph it was applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReduction {
    pub center: String,
    /// Outer path `v1 .. vm`.
    pub outer: Vec<String>,
    /// `v3 .. v(m-1)`, merged into `v3`.
    pub contracted: Vec<String>,
}

/// Maximal reducible fans around `c`: outer paths `v1 .. vm`, `m >= 5`, all
/// adjacent to `c`, with `v2 .. v(m-1)` of degree exactly 3.
pub fn reducible_fans(g: &Graph, c: VertexId) -> Vec<Vec<VertexId>> {
    let nc: BTreeSet<VertexId> = g.neighbors(c).iter().copied().collect();
    let others = |u: VertexId| -> Vec<VertexId> {
        g.neighbors(u).iter().copied().filter(|&w| w != c).collect()
    };
    let inner: BTreeSet<VertexId> = nc
        .iter()
        .copied()
        .filter(|&u| g.degree(u) == 3 && others(u).iter().all(|w| nc.contains(w)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut fans = Vec::new();
    for &s in &inner {
        if seen.contains(&s) {
            continue;
        }
        // Collect the component of s among the inner vertices.
        let mut comp = vec![s];
        seen.insert(s);
        let mut i = 0;
        while i < comp.len() {
            for w in others(comp[i]) {
                if inner.contains(&w) && seen.insert(w) {
                    comp.push(w);
                }
            }
            i += 1;
        }
        let ends: Vec<VertexId> = comp
            .iter()
            .copied()
            .filter(|&u| others(u).iter().filter(|w| inner.contains(w)).count() < 2)
            .collect();
        if ends.is_empty() {
            // A cycle of inner vertices: the rim of a wheel around c.
            if comp.len() < 5 {
                continue;
            }
            let start = *comp.iter().min().unwrap();
            let mut path = vec![start];
            let mut prev = start;
            let mut cur = *others(start).iter().min().unwrap();
            while cur != start {
                path.push(cur);
                let next = others(cur).into_iter().find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
            fans.push(path);
            continue;
        }
        let start = *ends.iter().min().unwrap();
        let mut chain = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = others(cur)
                .into_iter()
                .find(|&w| w != prev && inner.contains(&w) && !chain.contains(&w));
            match next {
                Some(w) => {
                    chain.push(w);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        let outside = |u: VertexId, skip: Option<VertexId>| {
            others(u)
                .into_iter()
                .find(|w| !inner.contains(w) && Some(*w) != skip)
        };
        let t = chain.len();
        let a = outside(chain[0], None).unwrap();
        let b = if t == 1 {
            outside(chain[0], Some(a)).unwrap()
        } else {
            outside(chain[t - 1], None).unwrap()
        };
        if a != b && t >= 3 {
            let mut path = vec![a];
            path.extend(&chain);
            path.push(b);
            fans.push(path);
        } else if a == b && t >= 4 {
            let mut path = vec![a];
            path.extend(&chain);
            fans.push(path);
        }
    }
    fans
}

/// Contracts the middle of one reducible fan at a time, scanning centres in
/// vertex order and rescanning after each step, until none is left.
pub fn fan_reduction(g: &Graph) -> (Graph, Vec<FanReduction>) {
    let mut cur = g.clone();
    let mut log = Vec::new();
    'outer: loop {
        for c in 0..cur.n() {
            if let Some(path) = reducible_fans(&cur, c).into_iter().next() {
                let m = path.len();
                let middle = &path[2..m - 1];
                let names = |vs: &[VertexId]| -> Vec<String> {
                    vs.iter().map(|&v| cur.name(v).to_string()).collect()
                };
                log.push(FanReduction {
                    center: cur.name(c).to_string(),
                    outer: names(&path),
                    contracted: names(middle),
                });
                cur = cur.contract_set(middle);
                continue 'outer;
            }
        }
        break;
    }
    (cur, log)
}

/// True when some vertex has a reducible fan; found by checking every
/// 5-vertex outer path among its neighbours.
pub fn has_reducible_fan(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nc = g.neighbors(c);
        let mut path = Vec::with_capacity(5);
        nc.iter().any(|&s| five_path(g, c, nc, s, &mut path))
    })
}

fn five_path(g: &Graph, c: VertexId, nc: &[VertexId], v: VertexId, path: &mut Vec<VertexId>) -> bool {
    path.push(v);
    let found = if path.len() == 5 {
        path[1..4].iter().all(|&u| g.degree(u) == 3)
    } else {
        g.neighbors(v).iter().any(|&w| {
            w != c && nc.contains(&w) && !path.contains(&w) && five_path(g, c, nc, w, path)
        })
    };
    path.pop();
    found
}

/// Maximal classes of pairwise non-adjacent vertices with one common
/// neighbourhood `S`, `|S| <= h`, of size at least `h + 1`.
pub fn twin_classes(g: &Graph, h: usize) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
    let mut by_nb: BTreeMap<Vec<VertexId>, Vec<VertexId>> = BTreeMap::new();
    for v in 0..g.n() {
        by_nb.entry(g.neighbors(v).to_vec()).or_default().push(v);
    }
    by_nb
        .into_iter()
        .filter(|(s, t)| s.len() <= h && t.len() > h)
        .map(|(s, t)| (t, s))
        .collect()
}

/// Trims each twin class down to its `h + 1` members with the smallest
/// names.
pub fn h_reduction(g: &Graph, h: usize) -> Result<Graph> {
    if h < 3 {
        return invalid("h must be at least 3");
    }
    if !g.is_three_connected() {
        return invalid("h-reduction needs a 3-connected graph");
    }
    let mut drop = Vec::new();
    for (mut t, _) in twin_classes(g, h) {
        t.sort_by(|&a, &b| g.name(a).cmp(g.name(b)));
        drop.extend_from_slice(&t[h + 1..]);
    }
    let out = g.without_vertices(&drop);
    if !out.is_three_connected() {
        return Err(Error::Verification("h-reduction broke 3-connectivity".into()));
    }
    Ok(out)
}
