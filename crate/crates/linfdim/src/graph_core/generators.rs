//! Named graph families, with certificate distance functions for the four
//! K4-based families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::graph::{EdgeId, Graph};
use super::metric::MetricGraph;
use crate::error::{invalid, Error, Result};
use crate::scalar::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// k copies of K4 sharing the edge vw, which is then deleted.
    S,
    /// K4s glued along a path.
    P,
    /// K4s glued around a common vertex v0.
    F,
    /// The necklace.
    N,
    Wheel,
    Ladder,
    /// k-vertex path plus a universal vertex.
    Fan,
    Complete,
    Cycle,
    Path,
    Star,
    SquareGrid,
    TriGrid,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::S,
        Family::P,
        Family::F,
        Family::N,
        Family::Wheel,
        Family::Ladder,
        Family::Fan,
        Family::Complete,
        Family::Cycle,
        Family::Path,
        Family::Star,
        Family::SquareGrid,
        Family::TriGrid,
    ];

    pub fn has_certificate(self) -> bool {
        matches!(self, Family::S | Family::P | Family::F | Family::N)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::S => "S",
            Family::P => "P",
            Family::F => "F",
            Family::N => "N",
            Family::Wheel => "wheel",
            Family::Ladder => "ladder",
            Family::Fan => "fan",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Star => "star",
            Family::SquareGrid => "square_grid",
            Family::TriGrid => "tri_grid",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.tag().to_ascii_lowercase() == lower)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

/// A certificate instance: the family graph with its distance function and
/// the designated pairwise-incompatible matching.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub family: Family,
    pub k: usize,
    pub metric: MetricGraph<BigRational>,
    pub matching: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Plain(Graph),
    Certified(Certificate),
}

impl Generated {
    pub fn graph(&self) -> &Graph {
        match self {
            Generated::Plain(g) => g,
            Generated::Certified(c) => c.metric.graph(),
        }
    }
}

pub fn gen_family(family: Family, k: usize, with_certificate: bool) -> Result<Generated> {
    if with_certificate {
        certificate(family, k).map(Generated::Certified)
    } else {
        family_graph(family, k).map(Generated::Plain)
    }
}

/// Builder that records edges with weights as they are added.
struct Builder {
    g: Graph,
    d: Vec<BigRational>,
}

impl Builder {
    fn new() -> Self {
        Self {
            g: Graph::new(),
            d: Vec::new(),
        }
    }

    fn vertex(&mut self, name: impl Into<String>) {
        self.g.add_vertex(name).expect("fresh vertex");
    }

    fn edge(&mut self, a: &str, b: &str, d: BigRational) -> EdgeId {
        let e = self.g.add_edge_by_name(a, b).expect("simple family graph");
        self.d.push(d);
        e
    }
}

fn need(k: usize, min: usize, family: Family) -> Result<()> {
    if k < min {
        return invalid(format!("{family} needs k >= {min}, got {k}"));
    }
    Ok(())
}

pub fn family_graph(family: Family, k: usize) -> Result<Graph> {
    match family {
        Family::S | Family::P | Family::F | Family::N => {
            Ok(certificate(family, k)?.metric.graph().clone())
        }
        Family::Wheel => wheel(k),
        Family::Ladder => ladder(k),
        Family::Fan => fan(k),
        Family::Complete => complete(k),
        Family::Cycle => cycle(k),
        Family::Path => path(k),
        Family::Star => star(k),
        Family::SquareGrid => square_grid(k),
        Family::TriGrid => tri_grid(k),
    }
}

pub fn certificate(family: Family, k: usize) -> Result<Certificate> {
    need(k, 1, family)?;
    let (b, matching) = match family {
        Family::S => s_family(k),
        Family::P => p_family(k),
        Family::F => f_family(k),
        Family::N => n_family(k),
        other => return invalid(format!("family {other} has no certificate distance function")),
    };
    let metric = MetricGraph::new(b.g, b.d)
        .map_err(|e| Error::Verification(format!("{family}_{k} certificate: {e}")))?;
    Ok(Certificate {
        family,
        k,
        metric,
        matching,
    })
}

fn int(v: i64) -> BigRational {
    rat(v)
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// Vertices v, w, v_i, w_i. Copy i contributes vv_i, ww_i, wv_i, vw_i, v_iw_i.
/// For k = 1 the shared edge vw stays (S_1 = K4) with d(vw) = 3k, the value
/// under which the distance function is checked for larger k.
fn s_family(k: usize) -> (Builder, Vec<EdgeId>) {
    let mut b = Builder::new();
    let kk = k as i64;
    b.vertex("v");
    b.vertex("w");
    for i in 1..=k {
        b.vertex(format!("v{i}"));
        b.vertex(format!("w{i}"));
    }
    let mut matching = Vec::new();
    if k == 1 {
        b.edge("v", "w", int(3));
    }
    for i in 1..=k {
        let ii = i as i64;
        let (vi, wi) = (format!("v{i}"), format!("w{i}"));
        let spoke = if i == 1 { 4 * kk } else { 2 * (kk + ii - 1) };
        let e1 = b.edge("v", &vi, int(spoke));
        let e2 = b.edge("w", &wi, int(spoke));
        b.edge("w", &vi, int(kk + ii - 1));
        b.edge("v", &wi, int(kk + ii - 1));
        let e3 = b.edge(&vi, &wi, int(3 * (kk + ii - 1)));
        if i == 1 {
            matching.extend([e1, e2]);
        } else {
            matching.push(e3);
        }
    }
    (b, matching)
}

/// Rails v_0..v_k and w_0..w_k, ends v_0w_0 and v_kw_k, crossing pairs.
fn p_family(k: usize) -> (Builder, Vec<EdgeId>) {
    let mut b = Builder::new();
    for i in 0..=k {
        b.vertex(format!("v{i}"));
    }
    for i in 0..=k {
        b.vertex(format!("w{i}"));
    }
    let top = pow2(k);
    let mut matching = Vec::new();
    b.edge("v0", "w0", top.clone());
    for i in 1..=k {
        let (rail, cross) = if i % 2 == 1 {
            (top.clone() + int(1), int(1))
        } else if i % 4 == 2 {
            (top.clone() - int(1), int(1))
        } else {
            (top.clone() - pow2(1 + i / 2), pow2(1 + i / 2))
        };
        let (vp, vi, wp, wi) = (
            format!("v{}", i - 1),
            format!("v{i}"),
            format!("w{}", i - 1),
            format!("w{i}"),
        );
        let r1 = b.edge(&vp, &vi, rail.clone());
        b.edge(&vp, &wi, cross.clone());
        b.edge(&wp, &vi, cross);
        let r2 = b.edge(&wp, &wi, rail);
        if i % 2 == 1 {
            matching.extend([r1, r2]);
        }
    }
    let end = b.edge(&format!("v{k}"), &format!("w{k}"), top);
    if k % 2 == 0 {
        matching.push(end);
    }
    (b, matching)
}

/// Vertices v_0..v_{2k+1}; copy i of K4 is v_0, v_{2i-1}, v_{2i}, v_{2i+1}.
fn f_family(k: usize) -> (Builder, Vec<EdgeId>) {
    let mut b = Builder::new();
    for j in 0..=2 * k + 1 {
        b.vertex(format!("v{j}"));
    }
    let v = |j: usize| format!("v{j}");
    let mut matching = Vec::new();
    b.edge("v0", "v1", int(1));
    let far = b.edge("v0", &v(2 * k + 1), int(k as i64 + 1));
    matching.push(far);
    for i in 1..=k {
        let ii = i as i64;
        b.edge("v0", &v(2 * i), int(1));
        let m = b.edge(&v(2 * i - 1), &v(2 * i), int(ii + 1));
        b.edge(&v(2 * i - 1), &v(2 * i + 1), int(1));
        b.edge(&v(2 * i), &v(2 * i + 1), int(ii));
        matching.push(m);
    }
    (b, matching)
}

/// Vertices v_0..v_k, w_0..w_k; unit rails, d(v_{i-1}w_i) = k, d(v_iw_i) = k+1.
fn n_family(k: usize) -> (Builder, Vec<EdgeId>) {
    let mut b = Builder::new();
    let kk = k as i64;
    for i in 0..=k {
        b.vertex(format!("v{i}"));
    }
    for i in 0..=k {
        b.vertex(format!("w{i}"));
    }
    let mut matching = vec![b.edge("v0", "w0", int(kk + 1))];
    for i in 1..=k {
        let (vp, vi, wp, wi) = (
            format!("v{}", i - 1),
            format!("v{i}"),
            format!("w{}", i - 1),
            format!("w{i}"),
        );
        b.edge(&vp, &vi, int(1));
        matching.push(b.edge(&vi, &wi, int(kk + 1)));
        b.edge(&vp, &wi, int(kk));
        b.edge(&wp, &wi, int(1));
    }
    b.edge("w0", &format!("v{k}"), int(1));
    (b, matching)
}

/// Hub `v0` and rim cycle `v1..vn`.
pub fn wheel(n: usize) -> Result<Graph> {
    need(n, 3, Family::Wheel)?;
    let mut g = Graph::new();
    g.add_vertex("v0")?;
    for i in 1..=n {
        g.add_vertex(format!("v{i}"))?;
    }
    for i in 1..=n {
        g.add_edge(0, i)?;
    }
    for i in 1..=n {
        g.add_edge(i, i % n + 1)?;
    }
    Ok(g)
}

/// Rails v_1..v_n and w_1..w_n joined by rungs v_iw_i.
pub fn ladder(n: usize) -> Result<Graph> {
    need(n, 1, Family::Ladder)?;
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_vertex(format!("v{i}"))?;
    }
    for i in 1..=n {
        g.add_vertex(format!("w{i}"))?;
    }
    for i in 0..n {
        g.add_edge(i, n + i)?;
        if i + 1 < n {
            g.add_edge(i, i + 1)?;
            g.add_edge(n + i, n + i + 1)?;
        }
    }
    Ok(g)
}

/// Center `v0` and path `v1..vk`.
pub fn fan(k: usize) -> Result<Graph> {
    need(k, 1, Family::Fan)?;
    let mut g = Graph::new();
    g.add_vertex("v0")?;
    for i in 1..=k {
        g.add_vertex(format!("v{i}"))?;
        g.add_edge(0, i)?;
        if i > 1 {
            g.add_edge(i - 1, i)?;
        }
    }
    Ok(g)
}

pub fn complete(k: usize) -> Result<Graph> {
    need(k, 1, Family::Complete)?;
    let mut g = Graph::new();
    for i in 1..=k {
        g.add_vertex(format!("v{i}"))?;
    }
    for i in 0..k {
        for j in i + 1..k {
            g.add_edge(i, j)?;
        }
    }
    Ok(g)
}

pub fn cycle(k: usize) -> Result<Graph> {
    need(k, 3, Family::Cycle)?;
    let mut g = path(k)?;
    g.add_edge(k - 1, 0)?;
    Ok(g)
}

pub fn path(k: usize) -> Result<Graph> {
    need(k, 1, Family::Path)?;
    let mut g = Graph::new();
    for i in 1..=k {
        g.add_vertex(format!("v{i}"))?;
        if i > 1 {
            g.add_edge(i - 2, i - 1)?;
        }
    }
    Ok(g)
}

/// K_{1,k} with center `v0`.
pub fn star(k: usize) -> Result<Graph> {
    need(k, 1, Family::Star)?;
    let mut g = Graph::new();
    g.add_vertex("v0")?;
    for i in 1..=k {
        g.add_vertex(format!("v{i}"))?;
        g.add_edge(0, i)?;
    }
    Ok(g)
}

/// K_{a,b} with sides `a1..` and `b1..`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let mut g = Graph::new();
    for i in 1..=a {
        g.add_vertex(format!("a{i}"))?;
    }
    for j in 1..=b {
        g.add_vertex(format!("b{j}"))?;
    }
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j)?;
        }
    }
    Ok(g)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_index_edges(10, &edges).expect("petersen graph is simple")
}

/// Name of grid vertex (i, j), 1-based.
pub fn grid_name(i: usize, j: usize) -> String {
    format!("v{i},{j}")
}

/// r x r grid with 4-neighbour adjacency.
pub fn square_grid(r: usize) -> Result<Graph> {
    need(r, 1, Family::SquareGrid)?;
    let mut g = Graph::new();
    for i in 1..=r {
        for j in 1..=r {
            g.add_vertex(grid_name(i, j))?;
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            if i < r {
                g.add_edge_by_name(&grid_name(i, j), &grid_name(i + 1, j))?;
            }
            if j < r {
                g.add_edge_by_name(&grid_name(i, j), &grid_name(i, j + 1))?;
            }
        }
    }
    Ok(g)
}

/// Triangular grid: vertices v_{i,j} with 1 <= i <= j <= r, adjacent when
/// the index difference is ±(1,0), ±(0,1) or ±(1,1).
pub fn tri_grid(r: usize) -> Result<Graph> {
    need(r, 1, Family::TriGrid)?;
    let mut g = Graph::new();
    for i in 1..=r {
        for j in i..=r {
            g.add_vertex(grid_name(i, j))?;
        }
    }
    for i in 1..=r {
        for j in i..=r {
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                let (a, b) = (i + di, j + dj);
                if a <= b && b <= r {
                    g.add_edge_by_name(&grid_name(i, j), &grid_name(a, b))?;
                }
            }
        }
    }
    Ok(g)
}
