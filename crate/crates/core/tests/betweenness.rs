mod common;

use common::oracle;
use likemind_core::structural::{edge_betweenness, girvan_newman};
use likemind_core::{Graph, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let n = rng.gen_range(2..=9);
        let p = rng.gen_range(0.15..0.7);
        let g = Graph::from_edges(n, oracle::random_graph(&mut rng, n, p)).unwrap();
        let expected = oracle::betweenness(n, g.edges());
        let got = edge_betweenness(&g);
        for (e, (&a, &b)) in got.scores().iter().zip(&expected).enumerate() {
            assert!((a - b).abs() < 1e-9, "edge {:?}: {a} vs {b}", g.edges()[e]);
        }
    }
}

#[test]
fn girvan_newman_removes_a_current_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..30 {
        let n = rng.gen_range(3..=9);
        let edges = oracle::random_graph(&mut rng, n, 0.45);
        let g = Graph::from_edges(n, edges.clone()).unwrap();
        let gn = girvan_newman(&g);
        assert_eq!(gn.removals.len(), g.edge_count());
        let mut remaining = g.edges().to_vec();
        for removal in &gn.removals {
            let scores = oracle::betweenness(n, &remaining);
            let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let first = scores.iter().position(|&s| (s - max).abs() < 1e-9).unwrap();
            assert_eq!(removal.edge, remaining[first]);
            assert!((removal.betweenness - max).abs() < 1e-9);
            remaining.remove(first);
            let labels = oracle::components(n, &remaining);
            assert_eq!(Partition::from_assignment(&labels).community_count(), removal.components);
        }
        let d = &gn.dendrogram;
        assert_eq!(d.min_k(), g.connected_components().community_count());
        assert_eq!(d.cut(d.min_k()).unwrap(), g.connected_components());
    }
}
