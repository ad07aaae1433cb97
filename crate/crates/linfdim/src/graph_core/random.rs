//! Seeded random instances: connected, 2-connected, outerplanar and
//! 3-connected graphs with planted twin classes.

use rand::seq::SliceRandom;
use rand::Rng;

use super::graph::{Graph, VertexId};
use crate::error::{invalid, Result};

fn numbered(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(format!("u{i}")).expect("fresh name");
    }
    g
}

fn add_random_edges<R: Rng>(g: &mut Graph, extra: usize, rng: &mut R) {
    let n = g.n();
    let mut missing: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    missing.shuffle(rng);
    for &(u, v) in missing.iter().take(extra) {
        g.add_edge(u, v).expect("edge was missing");
    }
}

/// Random spanning tree plus `extra` random edges.
pub fn random_connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return invalid("need at least one vertex");
    }
    let mut g = numbered(n);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(order[i], parent).expect("tree edge");
    }
    add_random_edges(&mut g, extra, rng);
    Ok(g)
}

/// Hamiltonian cycle in random order plus `extra` random chords.
pub fn random_two_connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return invalid("a 2-connected simple graph needs at least 3 vertices");
    }
    let mut g = numbered(n);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]).expect("cycle edge");
    }
    add_random_edges(&mut g, extra, rng);
    Ok(g)
}

/// 2-connected with minimum degree at least 3.
pub fn random_min_degree3<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Result<Graph> {
    if n < 4 {
        return invalid("minimum degree 3 needs at least 4 vertices");
    }
    let mut g = random_two_connected(n, extra, rng)?;
    while let Some(v) = (0..n).find(|&v| g.degree(v) < 3) {
        let options: Vec<VertexId> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
        let w = *options.choose(rng).expect("n >= 4 leaves a free partner");
        g.add_edge(v, w).expect("edge was missing");
    }
    Ok(g)
}

/// Polygon on `n` vertices (in random order) with `chords` attempts at
/// adding a random non-crossing diagonal.
pub fn random_outerplanar<R: Rng>(n: usize, chords: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return invalid("need at least 3 vertices");
    }
    let mut g = numbered(n);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 0..n {
        g.add_edge(order[i], order[(i + 1) % n]).expect("cycle edge");
    }
    let mut diagonals: Vec<(usize, usize)> = Vec::new();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        let inside = |x: usize| a < x && x < b;
        a != c && a != d && b != c && b != d && inside(c) != inside(d)
    };
    for _ in 0..chords {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if b - a < 2 || (a == 0 && b == n - 1) || diagonals.contains(&(a, b)) {
            continue;
        }
        if diagonals.iter().any(|&dg| crosses((a, b), dg)) {
            continue;
        }
        diagonals.push((a, b));
        g.add_edge(order[a], order[b]).expect("new diagonal");
    }
    Ok(g)
}

/// A random 3-connected core on `core` vertices with a planted class of
/// `twins` pairwise non-adjacent vertices, all adjacent to the same `s`
/// core vertices (`3 <= s <= core`).
pub fn random_planted_twins<R: Rng>(core: usize, s: usize, twins: usize, rng: &mut R) -> Result<Graph> {
    if core < 4 || s < 3 || s > core {
        return invalid("need core >= 4 and 3 <= s <= core");
    }
    let mut g = loop {
        let extra = rng.gen_range(core..=core * (core - 1) / 2);
        let g = random_min_degree3(core, extra, rng)?;
        if g.is_three_connected() {
            break g;
        }
    };
    let mut pool: Vec<VertexId> = (0..core).collect();
    pool.shuffle(rng);
    let attach = &pool[..s];
    for t in 0..twins {
        let x = g.add_vertex(format!("t{t}"))?;
        for &a in attach {
            g.add_edge(x, a)?;
        }
    }
    Ok(g)
}
