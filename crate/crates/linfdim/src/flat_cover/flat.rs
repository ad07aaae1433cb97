use std::collections::BTreeSet;

use super::signed::{Arc, ArcSet, ArcSystem, NegativeCycle, Potential};
use crate::error::{invalid, Error, Result};
use crate::graph_core::{EdgeId, MetricGraph};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum FlatVerdict<S> {
    Flat(Potential<S>),
    NotFlat(NegativeCycle<S>),
}

impl<S> FlatVerdict<S> {
    pub fn is_flat(&self) -> bool {
        matches!(self, FlatVerdict::Flat(_))
    }
}

/// Decides flatness of `f` by looking for a negative cycle under the
/// weights `-d` on arcs of `f` and `+d` elsewhere.
pub fn is_flat<S: Scalar>(mg: &MetricGraph<S>, f: &ArcSet) -> Result<FlatVerdict<S>> {
    f.validate(mg)?;
    let sys = ArcSystem::with_flat(mg, f);
    Ok(match sys.solve(None) {
        Ok(p) => FlatVerdict::Flat(Potential { p }),
        Err(slots) => FlatVerdict::NotFlat(sys.cycle_from_slots(&slots)),
    })
}

/// Potential tight on every arc of `f`. Errors with the negative cycle when
/// `f` is not flat.
pub fn find_potential<S: Scalar>(mg: &MetricGraph<S>, f: &ArcSet) -> Result<Potential<S>> {
    match is_flat(mg, f)? {
        FlatVerdict::Flat(p) => Ok(p),
        FlatVerdict::NotFlat(c) => {
            let g = mg.graph();
            let names: Vec<&str> = c.vertices.iter().map(|&v| g.name(v)).collect();
            invalid(format!(
                "arc set is not flat: negative cycle {} of weight {}",
                names.join(" -> "),
                c.weight
            ))
        }
    }
}

/// Checks the potential inequalities and tightness on `f`.
pub fn potential_is_tight<S: Scalar>(mg: &MetricGraph<S>, f: &ArcSet, p: &Potential<S>) -> bool {
    let g = mg.graph();
    let feasible = g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let diff = p.p[u].clone() - p.p[v].clone();
        diff.abs() <= *mg.d(e)
    });
    feasible
        && f.iter().all(|a| {
            p.p[a.tail(g)].clone() - p.p[a.head(g)].clone() == *mg.d(a.edge)
        })
}

#[derive(Clone, Copy, Debug)]
pub struct FlattenConfig {
    pub cap: usize,
    pub force: bool,
}

impl Default for FlattenConfig {
    fn default() -> Self {
        Self {
            cap: 20,
            force: false,
        }
    }
}

/// Finds a flat orientation of the edge set `s`, if any. The first edge is
/// fixed in its forward direction since reversing a flat set keeps it flat.
pub fn is_flattenable<S: Scalar>(
    mg: &MetricGraph<S>,
    s: &[EdgeId],
    config: FlattenConfig,
) -> Result<Option<ArcSet>> {
    let edges: Vec<EdgeId> = s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&e) = edges.iter().find(|&&e| e >= mg.m()) {
        return invalid(format!("edge {e} is not in the host"));
    }
    if edges.len() > config.cap && !config.force {
        return Err(Error::CapExceeded {
            what: "edge set",
            limit: config.cap,
            actual: edges.len(),
        });
    }
    let mut sys = ArcSystem::new(mg);
    let labels = vec![S::zero(); mg.n()];
    Ok(orient(&mut sys, mg, &edges, &labels, true).map(|(f, _)| f))
}

/// Depth-first orientation search over `edges` on top of whatever is
/// already marked flat in `sys`, warm-starting each feasibility test from
/// the labels of the parent. Returns the arcs chosen and final labels.
/// `sys` is restored before returning. `fix_first` is only sound when
/// nothing else is marked flat.
pub(crate) fn orient<S: Scalar>(
    sys: &mut ArcSystem<S>,
    mg: &MetricGraph<S>,
    edges: &[EdgeId],
    labels: &[S],
    fix_first: bool,
) -> Option<(ArcSet, Vec<S>)> {
    let mut chosen = Vec::with_capacity(edges.len());
    let free_from = usize::from(fix_first);
    let found = orient_rec(sys, mg, edges, 0, free_from, labels, &mut chosen);
    for a in &chosen {
        sys.set_flat(*a, false);
    }
    found.map(|p| (ArcSet::from_arcs(chosen), p))
}

fn orient_rec<S: Scalar>(
    sys: &mut ArcSystem<S>,
    mg: &MetricGraph<S>,
    edges: &[EdgeId],
    i: usize,
    free_from: usize,
    labels: &[S],
    chosen: &mut Vec<Arc>,
) -> Option<Vec<S>> {
    if i == edges.len() {
        return Some(labels.to_vec());
    }
    let e = edges[i];
    let both = i >= free_from && !mg.d(e).is_zero();
    let dirs: &[bool] = if both { &[true, false] } else { &[true] };
    for &fwd in dirs {
        let a = Arc::new(e, fwd);
        sys.set_flat(a, true);
        if let Ok(p) = sys.solve(Some(labels)) {
            chosen.push(a);
            if let Some(out) = orient_rec(sys, mg, edges, i + 1, free_from, &p, chosen) {
                return Some(out);
            }
            chosen.pop();
        }
        sys.set_flat(a, false);
    }
    None
}
