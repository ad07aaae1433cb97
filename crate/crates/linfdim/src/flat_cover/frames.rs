//! Frames `(Γ, F)`: a flattenable edge set `F` with a compressible subset `Γ`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::flat::{is_flattenable, FlattenConfig};
use super::signed::{Arc, ArcSystem};
use crate::error::{invalid, Error, Result};
use crate::graph_core::{graph_sum, EdgeId, Graph, MetricGraph, SumKind, VertexId};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Frame {
    pub gamma: BTreeSet<EdgeId>,
    pub f: BTreeSet<EdgeId>,
}

impl Frame {
    pub fn new(gamma: impl IntoIterator<Item = EdgeId>, f: impl IntoIterator<Item = EdgeId>) -> Self {
        Self {
            gamma: gamma.into_iter().collect(),
            f: f.into_iter().collect(),
        }
    }

    fn restrict(&self, keep: impl Fn(EdgeId) -> Option<EdgeId>) -> Self {
        Self {
            gamma: self.gamma.iter().filter_map(|&e| keep(e)).collect(),
            f: self.f.iter().filter_map(|&e| keep(e)).collect(),
        }
    }
}

/// Merges two frames that meet at the edge `e` of a 2-sum that keeps `e`.
/// Both frames must already be expressed on the edge ids of the sum.
pub fn merge_frame_sets(fr1: &Frame, fr2: &Frame, e: EdgeId) -> Result<Frame> {
    let plain = |fr: &Frame| fr.f.contains(&e) && !fr.gamma.contains(&e);
    let gamma: BTreeSet<_> = fr1.gamma.union(&fr2.gamma).copied().collect();
    let f: BTreeSet<_> = fr1.f.union(&fr2.f).copied().collect();
    if plain(fr1) && plain(fr2) {
        Ok(Frame { gamma, f })
    } else if fr1.gamma.contains(&e) || fr2.gamma.contains(&e) {
        Ok(Frame {
            gamma: gamma.into_iter().filter(|&x| x != e).collect(),
            f: f.into_iter().filter(|&x| x != e).collect(),
        })
    } else {
        invalid("shared edge is neither in both F \\ Γ nor in some Γ")
    }
}

/// Frame on `G1 ⊕_e G2` from frames on the two sides. `e` is given by its
/// endpoint names, which the operands share.
pub fn merge_frames_2sum(
    g1: &Graph,
    fr1: &Frame,
    g2: &Graph,
    fr2: &Frame,
    e: (&str, &str),
) -> Result<(Graph, Frame)> {
    let g = graph_sum(g1, g2, &SumKind::TwoSumKeep(e.0.into(), e.1.into()))?;
    let lift = |h: &Graph, fr: &Frame| {
        fr.restrict(|x| {
            let (a, b) = h.edge_names(x);
            g.edge_by_names(a, b)
        })
    };
    let shared = g.edge_by_names(e.0, e.1).unwrap();
    let merged = merge_frame_sets(&lift(g1, fr1), &lift(g2, fr2), shared)?;
    Ok((g, merged))
}

/// The outer cycle of a 2-connected outerplanar graph and three frames with
/// the double-cover property on it.
#[derive(Clone, Debug)]
pub struct OuterplanarFrames {
    pub outer_cycle: Vec<VertexId>,
    pub frames: [Frame; 3],
}

/// The unique Hamiltonian cycle with pairwise non-crossing chords, or an
/// error when the graph is not 2-connected outerplanar.
pub fn outer_cycle(g: &Graph) -> Result<Vec<VertexId>> {
    if !g.is_two_connected() {
        return invalid("graph is not 2-connected");
    }
    if g.m() > 2 * g.n() - 3 {
        return invalid("graph has too many edges to be outerplanar");
    }
    let n = g.n();
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    if hamilton(g, &mut path, &mut used) {
        Ok(path)
    } else {
        invalid("graph is not outerplanar")
    }
}

fn hamilton(g: &Graph, path: &mut Vec<VertexId>, used: &mut [bool]) -> bool {
    let n = g.n();
    let last = *path.last().unwrap();
    if path.len() == n {
        return g.has_edge(last, path[0]) && chords_planar(g, path);
    }
    for &w in g.neighbors(last) {
        if used[w] {
            continue;
        }
        // Fix the direction: the second vertex is smaller than the last one.
        if path.len() == n - 1 && path.len() >= 2 && w < path[1] {
            continue;
        }
        used[w] = true;
        path.push(w);
        if hamilton(g, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

fn chords_planar(g: &Graph, cycle: &[VertexId]) -> bool {
    let n = cycle.len();
    let mut pos = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let chords: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .filter(|&(a, b)| b - a != 1 && !(a == 0 && b == n - 1))
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let inside = |x: usize| a < x && x < b;
            if inside(c) != inside(d) {
                return false;
            }
        }
    }
    true
}

/// Base-case frames of a triangle on `tri`, labelled so that
/// `d(x1x2) <= d(x1x3) <= d(x2x3)`.
fn triangle_frames<S: Scalar>(mg: &MetricGraph<S>, tri: [VertexId; 3]) -> [Frame; 3] {
    let g = mg.graph();
    let e = |a: VertexId, b: VertexId| g.edge_id(a, b).expect("triangle edge");
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in perms {
        let (x1, x2, x3) = (tri[p[0]], tri[p[1]], tri[p[2]]);
        let (e12, e13, e23) = (e(x1, x2), e(x1, x3), e(x2, x3));
        if mg.d(e12) <= mg.d(e13) && mg.d(e13) <= mg.d(e23) {
            return [
                Frame::new([e12, e13], [e12, e13]),
                Frame::new([e23], [e12, e23]),
                Frame::new([], [e13, e23]),
            ];
        }
    }
    unreachable!("some labelling sorts three values")
}

/// Three frames such that every edge lies in some `F_j` and every edge of
/// the outer cycle lies in exactly two `F_j` and exactly one `Γ_j`.
///
/// Degree-2 vertices are stripped one at a time; when the two neighbours
/// of a stripped vertex are not adjacent, the chord between them is added
/// with its shortest-path length. The frames are then rebuilt in reverse by
/// 2-sums with triangles, and added chords are dropped at the end.
pub fn three_frames_outerplanar<S: Scalar>(mg: &MetricGraph<S>) -> Result<OuterplanarFrames> {
    let g = mg.graph();
    let cycle = outer_cycle(g)?;
    let dist = mg.all_pairs();
    let mut aug = g.clone();
    let mut d: Vec<S> = mg.distances().to_vec();
    let mut alive = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut steps: Vec<(VertexId, VertexId, VertexId)> = Vec::new();
    let mut left = g.n();
    while left > 3 {
        let v = (0..g.n())
            .find(|&v| alive[v] && deg[v] == 2)
            .ok_or_else(|| Error::Verification("no degree-2 vertex while stripping".into()))?;
        let nb: Vec<VertexId> = aug.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
        let (a, b) = (nb[0], nb[1]);
        if !aug.has_edge(a, b) {
            aug.add_edge(a, b)?;
            d.push(dist[a][b].clone().expect("connected"));
            deg[a] += 1;
            deg[b] += 1;
        }
        alive[v] = false;
        deg[a] -= 1;
        deg[b] -= 1;
        left -= 1;
        steps.push((v, a, b));
    }
    let aug_mg = MetricGraph::new_unchecked(aug, d);
    let base: Vec<VertexId> = (0..g.n()).filter(|&v| alive[v]).collect();
    let mut frames = triangle_frames(&aug_mg, [base[0], base[1], base[2]]);
    let ag = aug_mg.graph();
    for &(v, a, b) in steps.iter().rev() {
        let e = ag.edge_id(a, b).unwrap();
        let tri = triangle_frames(&aug_mg, [v, a, b]);
        let outer = arrange(&frames, e)?;
        let inner = arrange(&tri, e)?;
        // Index 1: e plain on both sides. Index 2: e compressible on the
        // big side and absent from the triangle. Index 3: the reverse.
        let pairs = [(outer.plain, inner.plain), (outer.gamma, inner.absent), (outer.absent, inner.gamma)];
        let mut next: [Frame; 3] = Default::default();
        for (j, &(x, y)) in pairs.iter().enumerate() {
            next[j] = merge_frame_sets(&frames[x], &tri[y], e)?;
        }
        frames = next;
    }
    let m = g.m();
    let frames = frames.map(|fr| fr.restrict(|e| (e < m).then_some(e)));
    Ok(OuterplanarFrames {
        outer_cycle: cycle,
        frames,
    })
}

struct Roles {
    plain: usize,
    gamma: usize,
    absent: usize,
}

/// Which of three frames has `e` in `F \ Γ`, in `Γ`, and not at all.
fn arrange(frames: &[Frame; 3], e: EdgeId) -> Result<Roles> {
    let find = |pred: &dyn Fn(&Frame) -> bool| {
        let hits: Vec<usize> = (0..3).filter(|&j| pred(&frames[j])).collect();
        if hits.len() == 1 {
            Ok(hits[0])
        } else {
            Err(Error::Verification(format!(
                "edge {e} breaks the double-cover property ({} matches)",
                hits.len()
            )))
        }
    };
    Ok(Roles {
        plain: find(&|fr: &Frame| fr.f.contains(&e) && !fr.gamma.contains(&e))?,
        gamma: find(&|fr: &Frame| fr.gamma.contains(&e))?,
        absent: find(&|fr: &Frame| !fr.f.contains(&e))?,
    })
}

/// Mechanical check of the double-cover property, plus `Γ ⊆ F` and
/// flattenability of each `F_j`.
pub fn check_star_property<S: Scalar>(mg: &MetricGraph<S>, of: &OuterplanarFrames) -> Result<()> {
    let g = mg.graph();
    for (j, fr) in of.frames.iter().enumerate() {
        if !fr.gamma.is_subset(&fr.f) {
            return Err(Error::Verification(format!("Γ_{j} is not inside F_{j}")));
        }
        let edges: Vec<EdgeId> = fr.f.iter().copied().collect();
        let cfg = FlattenConfig { cap: usize::MAX, force: true };
        if is_flattenable(mg, &edges, cfg)?.is_none() {
            return Err(Error::Verification(format!("F_{j} is not flattenable")));
        }
    }
    for e in 0..g.m() {
        if !of.frames.iter().any(|fr| fr.f.contains(&e)) {
            let (a, b) = g.edge_names(e);
            return Err(Error::Verification(format!("edge {a}-{b} lies in no F_j")));
        }
    }
    let c = &of.outer_cycle;
    for i in 0..c.len() {
        let e = g
            .edge_id(c[i], c[(i + 1) % c.len()])
            .ok_or_else(|| Error::Verification("outer cycle uses a non-edge".into()))?;
        let in_f = of.frames.iter().filter(|fr| fr.f.contains(&e)).count();
        let in_gamma = of.frames.iter().filter(|fr| fr.gamma.contains(&e)).count();
        if in_f != 2 || in_gamma != 1 {
            let (a, b) = g.edge_names(e);
            return Err(Error::Verification(format!(
                "outer edge {a}-{b} lies in {in_f} sets F_j and {in_gamma} sets Γ_j"
            )));
        }
    }
    Ok(())
}

/// Which λ vectors to try in [`check_frame`].
#[derive(Clone, Debug)]
pub struct LambdaPlan {
    /// Enumerate all corners when `|Γ|` is at most this.
    pub corner_limit: usize,
    pub midpoint: bool,
    pub random: usize,
    pub denominator: i64,
    pub seed: u64,
}

impl Default for LambdaPlan {
    fn default() -> Self {
        Self {
            corner_limit: 6,
            midpoint: true,
            random: 32,
            denominator: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FrameCheck<S> {
    /// No potential realizes this λ (given per edge of Γ, in order).
    Refuted { lambda: Vec<(EdgeId, S)> },
    /// Every sampled λ was realized. This is evidence, not a proof.
    Passed { samples: usize },
}

/// Samples λ ∈ [0,1]^Γ and searches, for each, an orientation of `F` whose
/// equality system `|p(u) - p(v)| = λ d` on Γ and `= d` on `F \ Γ` is
/// feasible together with `|p(u) - p(v)| <= d` everywhere.
pub fn check_frame<S: Scalar>(
    mg: &MetricGraph<S>,
    fr: &Frame,
    plan: &LambdaPlan,
) -> Result<FrameCheck<S>> {
    if !fr.gamma.is_subset(&fr.f) {
        return invalid("Γ must be a subset of F");
    }
    if let Some(&e) = fr.f.iter().find(|&&e| e >= mg.m()) {
        return invalid(format!("edge {e} is not in the host"));
    }
    let gamma: Vec<EdgeId> = fr.gamma.iter().copied().collect();
    let den = plan.denominator.max(1);
    let mut samples: Vec<Vec<i64>> = Vec::new();
    if gamma.len() <= plan.corner_limit {
        for mask in 0u64..(1u64 << gamma.len()) {
            samples.push((0..gamma.len()).map(|i| if mask >> i & 1 == 1 { den } else { 0 }).collect());
        }
    }
    if plan.midpoint {
        samples.push(vec![den / 2; gamma.len()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random {
        samples.push((0..gamma.len()).map(|_| rng.gen_range(0..=den)).collect());
    }
    if gamma.is_empty() {
        samples.truncate(1);
    }
    let den_s = S::from_int(den);
    let f_edges: Vec<EdgeId> = fr.f.iter().copied().collect();
    for lam in &samples {
        let mut target: Vec<Option<S>> = vec![None; mg.m()];
        for &e in &f_edges {
            target[e] = Some(mg.d(e).clone());
        }
        let lambda: Vec<(EdgeId, S)> = gamma
            .iter()
            .zip(lam)
            .map(|(&e, &k)| (e, S::from_int(k) / den_s.clone()))
            .collect();
        for (e, l) in &lambda {
            target[*e] = Some(l.clone() * mg.d(*e).clone());
        }
        if !realizable(mg, &f_edges, &target) {
            return Ok(FrameCheck::Refuted { lambda });
        }
    }
    Ok(FrameCheck::Passed {
        samples: samples.len(),
    })
}

fn realizable<S: Scalar>(mg: &MetricGraph<S>, edges: &[EdgeId], target: &[Option<S>]) -> bool {
    let mut sys = ArcSystem::new(mg);
    let labels = vec![S::zero(); mg.n()];
    signs(&mut sys, edges, target, 0, &labels)
}

fn signs<S: Scalar>(
    sys: &mut ArcSystem<S>,
    edges: &[EdgeId],
    target: &[Option<S>],
    i: usize,
    labels: &[S],
) -> bool {
    if i == edges.len() {
        return true;
    }
    let e = edges[i];
    let t = target[e].clone().unwrap();
    let dirs: &[bool] = if i == 0 || t.is_zero() { &[true] } else { &[true, false] };
    let saved = (sys.weight(2 * e).clone(), sys.weight(2 * e + 1).clone());
    for &fwd in dirs {
        let a = Arc::new(e, fwd);
        sys.set_weight(a.slot(), -t.clone());
        sys.set_weight(a.reversed().slot(), t.clone());
        if let Ok(p) = sys.solve(Some(labels)) {
            if signs(sys, edges, target, i + 1, &p) {
                return true;
            }
        }
        sys.set_weight(2 * e, saved.0.clone());
        sys.set_weight(2 * e + 1, saved.1.clone());
    }
    false
}
