use linfdim::euclid::{rigidity_probe, simplex_check, tri_grid_embedding, tri_in_square_model, verify_l2};
use linfdim::graph_core::{validate_metric, verify_model};
use proptest::prelude::*;

#[test]
fn grids_up_to_eight() {
    for r in 2..=8 {
        let t = tri_grid_embedding(r).unwrap();
        assert_eq!(t.graph().n(), r * (r + 1) / 2);
        assert!(verify_l2(&t.metric, &t.embedding, 1e-9).valid);
        let q = t.rationalized(t.default_denominator());
        assert!(validate_metric(q.graph(), q.distances()).unwrap().is_valid());
        assert!(simplex_check(r).unwrap().max_deviation <= 1e-10);
    }
}

#[test]
fn square_grid_models() {
    for k in 1..=5 {
        assert!(verify_model(&tri_in_square_model(k).unwrap()));
    }
}

#[test]
fn probe_feasible_side() {
    for r in 2..=5 {
        let p = rigidity_probe(r, r - 1, 6, 1).unwrap();
        assert!(p.best_residual < 1e-8, "r = {r}: {}", p.best_residual);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perturbation_is_seen(r in 2usize..=7, pick in any::<prop::sample::Index>(), coord in any::<prop::sample::Index>()) {
        let t = tri_grid_embedding(r).unwrap();
        let mut emb = t.embedding.clone();
        let v = pick.index(emb.phi.len());
        let c = coord.index(r);
        emb.phi[v][c] += 1e-3;
        prop_assert!(!verify_l2(&t.metric, &emb, 1e-9).valid);
    }
}
