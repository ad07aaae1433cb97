use std::collections::BTreeMap;

use linfdim::dimension_solver::{exact_dim, upper_bound_tau, Budget};
use linfdim::graph_core::generators::{complete, fan, wheel};
use linfdim::graph_core::random::{random_min_degree3, random_planted_twins, random_two_connected};
use linfdim::graph_core::{graph_sum, metric_closure, random_metric, Graph, MetricGraph, SumKind};
use linfdim::structure::{
    contract_spqr, fan_reduction, h_reduction, has_reducible_fan, spqr, spqr_recompose, FanReduction, NodeKind,
};
use linfdim::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random 2-connected graph, sometimes built as a chain of 2-sums so that
/// the SPQR tree has several nodes.
fn layered(rng: &mut ChaCha8Rng, min_degree3: bool) -> Graph {
    let piece = |rng: &mut ChaCha8Rng, n: usize| {
        if min_degree3 {
            random_min_degree3(n, rng.gen_range(0..3), rng).unwrap()
        } else {
            random_two_connected(n, rng.gen_range(0..3), rng).unwrap()
        }
    };
    let low = if min_degree3 { 4 } else { 3 };
    let n = rng.gen_range(low..=6);
    let mut g = piece(rng, n);
    let mut tag = 0;
    while g.n() < 9 && rng.gen_bool(0.7) {
        let n = rng.gen_range(low..=5);
        let h = piece(rng, n);
        let e = rng.gen_range(0..g.m());
        let (a, b) = g.edge_names(e);
        let (a, b) = (a.to_string(), b.to_string());
        let (c, d) = h.edge_names(rng.gen_range(0..h.m()));
        let h = h
            .relabel(|s| if s == c { a.clone() } else if s == d { b.clone() } else { format!("p{tag}{s}") })
            .unwrap();
        tag += 1;
        let kind = if rng.gen_bool(0.5) { SumKind::TwoSumKeep(a, b) } else { SumKind::TwoSumDelete(a, b) };
        let next = graph_sum(&g, &h, &kind).unwrap();
        if next.is_two_connected() && (!min_degree3 || next.min_degree() >= 3) {
            g = next;
        }
    }
    g
}

#[test]
fn spqr_round_trip_and_leaves() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..100 {
        let g = layered(&mut rng, trial % 2 == 1);
        assert!(g.n() <= 12 || trial % 2 == 1);
        let t = spqr(&g).unwrap();
        let back = spqr_recompose(&t).unwrap();
        assert_eq!(back.edge_name_set(), g.edge_name_set(), "trial {trial}");
        let c = contract_spqr(&t).unwrap();
        assert_eq!(spqr_recompose(&c).unwrap().edge_name_set(), g.edge_name_set());
        for node in &c.nodes {
            if node.kind == NodeKind::O {
                assert!(node.minor.treewidth_at_most_two());
                let simple = node.minor.simple(&g);
                assert!(simple.is_two_connected() || (simple.n() == 2 && node.minor.edges.len() >= 3), "{:?}", node.minor);
            }
        }
        if g.min_degree() >= 3 {
            for leaf in c.leaves() {
                assert_eq!(c.nodes[leaf].kind, NodeKind::R, "trial {trial}");
            }
        }
    }
}

#[test]
fn twins_keep_tau() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let h = rng.gen_range(3..=5);
        let core = rng.gen_range(h.max(4)..=7);
        let s = rng.gen_range(3..=h);
        let g = random_planted_twins(core, s, h + rng.gen_range(2..=5), &mut rng).unwrap();
        let r = h_reduction(&g, h).unwrap();
        assert!(r.n() < g.n());
        assert_eq!(upper_bound_tau(&g).size, upper_bound_tau(&r).size);
    }
}

/// Distances on the reduced graph: each edge takes the shortest original
/// edge between the two vertex groups, then the closure.
fn induced(mg: &MetricGraph<Rational>, reduced: &Graph, log: &[FanReduction]) -> MetricGraph<Rational> {
    let mut rep: BTreeMap<String, String> = BTreeMap::new();
    for step in log {
        for name in &step.contracted {
            let target = rep.get(&step.contracted[0]).cloned().unwrap_or_else(|| step.contracted[0].clone());
            rep.insert(name.clone(), target);
        }
    }
    let find = |s: &str| -> String {
        let mut cur = s.to_string();
        while let Some(next) = rep.get(&cur) {
            if *next == cur {
                break;
            }
            cur = next.clone();
        }
        cur
    };
    let g = mg.graph();
    let w: Vec<Rational> = reduced
        .edges()
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (reduced.name(x), reduced.name(y));
            (0..g.m())
                .filter(|&e| {
                    let (a, b) = g.edge_names(e);
                    let (a, b) = (find(a), find(b));
                    (a == x && b == y) || (a == y && b == x)
                })
                .map(|e| mg.d(e).clone())
                .min()
                .unwrap()
        })
        .collect();
    metric_closure(reduced, &w)
}

#[test]
fn fan_replacement_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let k4 = complete(4).unwrap().relabel(|s| format!("q{s}")).unwrap();
    let k4 = k4.relabel(|s| match s { "qv1" => "v0".into(), "qv2" => "v1".into(), _ => s.into() }).unwrap();
    let mut bases = vec![];
    for n in 5..=8 {
        bases.push(wheel(n).unwrap());
        bases.push(fan(n).unwrap());
        bases.push(graph_sum(&fan(n).unwrap(), &k4, &SumKind::TwoSumKeep("v0".into(), "v1".into())).unwrap());
    }
    for g in bases {
        let (reduced, log) = fan_reduction(&g);
        for _ in 0..4 {
            let mg = random_metric(&g, 9, &mut rng);
            let small = induced(&mg, &reduced, &log);
            let big_dim = exact_dim(&mg, &Budget::default()).unwrap().dimension().unwrap();
            let small_dim = exact_dim(&small, &Budget::default()).unwrap().dimension().unwrap();
            assert!(big_dim <= small_dim + 4 * log.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fan_reduction_fixpoint(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = match rng.gen_range(0..3) {
            0 => wheel(rng.gen_range(3..12)).unwrap(),
            1 => fan(rng.gen_range(2..12)).unwrap(),
            _ => random_min_degree3(rng.gen_range(4..10), rng.gen_range(0..4), &mut rng).unwrap(),
        };
        let (once, _) = fan_reduction(&g);
        prop_assert!(!has_reducible_fan(&once));
        let (twice, log) = fan_reduction(&once);
        prop_assert_eq!(twice, once);
        prop_assert!(log.is_empty());
    }
}
