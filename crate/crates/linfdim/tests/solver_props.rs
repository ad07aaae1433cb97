use linfdim::dimension_solver::{exact_dim, lower_bound_incompat, upper_bound_tau, wheel_cover, Budget};
use linfdim::flat_cover::{assemble_embedding, is_flat, verify_linf, IncompatMode};
use linfdim::graph_core::generators::wheel;
use linfdim::graph_core::random::{random_connected, random_two_connected};
use linfdim::graph_core::{graph_sum, metric_closure, random_metric, MetricGraph, SumKind};
use linfdim::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn solve(mg: &MetricGraph<Rational>) -> linfdim::dimension_solver::DimResult {
    let r = exact_dim(mg, &Budget::default()).unwrap().solved().expect("small instance solves");
    for set in &r.covering.sets {
        assert!(is_flat(mg, set).unwrap().is_flat());
    }
    let emb = assemble_embedding(mg, &r.covering).unwrap();
    assert!(verify_linf(mg, &emb).is_valid());
    r
}

#[test]
fn wheels_stay_within_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..200 {
        let n = 3 + trial % 7;
        let mg = random_metric(&wheel(n).unwrap(), 12, &mut rng);
        let cov = wheel_cover(&mg).unwrap();
        assert!(cov.len() <= 4);
        let emb = assemble_embedding(&mg, &cov).unwrap();
        assert!(verify_linf(&mg, &emb).is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sandwich(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8);
        let g = random_connected(n, rng.gen_range(0..=n), &mut rng).unwrap();
        let mg = random_metric(&g, 9, &mut rng);
        let (lb, witness) = lower_bound_incompat(&mg, IncompatMode::Exact).unwrap();
        let r = solve(&mg);
        prop_assert_eq!(witness.len(), lb);
        prop_assert!(lb <= r.dimension);
        prop_assert!(r.dimension <= upper_bound_tau(&g).size);
        prop_assert!(r.covering.len() == r.dimension);
    }

    #[test]
    fn scaling_invariance(seed in any::<u64>(), num in 1i64..20, den in 1i64..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=7);
        let g = random_connected(n, rng.gen_range(0..=n), &mut rng).unwrap();
        let mg = random_metric(&g, 9, &mut rng);
        let scaled = mg.scaled(&Rational::new(num.into(), den.into()));
        prop_assert_eq!(solve(&mg).dimension, solve(&scaled).dimension);
    }

    #[test]
    fn two_sum_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = random_two_connected(rng.gen_range(3..=5), rng.gen_range(0..=2), &mut rng).unwrap();
        let g2 = random_two_connected(rng.gen_range(3..=5), rng.gen_range(0..=2), &mut rng).unwrap();
        let (a, b) = g1.edge_names(0);
        let (a, b) = (a.to_string(), b.to_string());
        let (c, d) = g2.edge_names(0);
        let g2 = g2
            .relabel(|s| if s == c { a.clone() } else if s == d { b.clone() } else { format!("x{s}") })
            .unwrap();
        let g = graph_sum(&g1, &g2, &SumKind::TwoSumKeep(a, b)).unwrap();
        let w: Vec<Rational> = (0..g.m()).map(|_| Rational::from_integer(rng.gen_range(1..=9).into())).collect();
        let mg = metric_closure(&g, &w);
        let restrict = |h: &linfdim::Graph| {
            let d = h
                .edges()
                .iter()
                .map(|&(u, v)| mg.d_by_names(h.name(u), h.name(v)).unwrap().clone())
                .collect();
            MetricGraph::new(h.clone(), d).unwrap()
        };
        let (d1, d2) = (solve(&restrict(&g1)).dimension, solve(&restrict(&g2)).dimension);
        prop_assert!(solve(&mg).dimension + 1 <= d1 + d2);
    }
}
