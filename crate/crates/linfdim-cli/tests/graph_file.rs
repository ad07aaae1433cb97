use linfdim::graph_core::random::random_connected;
use linfdim::graph_core::MetricGraph;
use linfdim::scalar::ratio;
use linfdim_cli::{GraphFile, Metadata};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let extra = rng.gen_range(0..=n);
        let g = random_connected(n, extra, &mut rng).unwrap();
        let d = (0..g.m()).map(|_| ratio(rng.gen_range(-50..500), rng.gen_range(1..40))).collect();
        let mg = MetricGraph::new_unchecked(g, d);
        let meta = Metadata { family: Some("random".into()), k: Some(n), ..Metadata::default() };
        let file = GraphFile::from_metric(&mg, Some(meta.clone()));
        let text = file.emit();
        let back = GraphFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        let loaded = back.load(false).unwrap();
        prop_assert_eq!(&loaded.graph, mg.graph());
        // Without edges there is nothing to carry a distance.
        match loaded.metric {
            Some(metric) => prop_assert_eq!(metric.distances(), mg.distances()),
            None => prop_assert_eq!(mg.m(), 0),
        }
        prop_assert_eq!(loaded.metadata, meta);
        prop_assert_eq!(back.emit(), text);
    }
}
