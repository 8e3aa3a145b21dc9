use std::path::Path;

use likemind::{io, output, similarity};
use likemind_core::sweep::{MetricRow, MetricSeries};
use likemind_core::{BehavioralMatrix, Graph, SparseVector, VectorKind};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1..15usize)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..40)))
        .prop_map(|(n, edges)| Graph::from_edges(n, edges).unwrap())
}

fn rating_vectors(n: usize) -> impl Strategy<Value = BehavioralMatrix> {
    prop::collection::vec(prop::collection::vec((0..12u32, 1..=5u8), 0..6), n).prop_map(|rows| {
        let vectors = rows
            .into_iter()
            .map(|entries| {
                let mut entries: Vec<(u32, f64)> = entries.into_iter().map(|(i, r)| (i, r as f64)).collect();
                entries.sort_by_key(|e| e.0);
                entries.dedup_by_key(|e| e.0);
                SparseVector::from_entries(entries)
            })
            .collect();
        BehavioralMatrix::new(VectorKind::Rating, 12, vectors).unwrap()
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in graph_strategy()) {
        let mut bytes = Vec::new();
        io::write_edge_list(&g, &mut bytes).unwrap();
        let back = io::read_edge_list(bytes.as_slice(), Path::new("g.tsv")).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn vector_file_round_trip((g, m) in graph_strategy().prop_flat_map(|g| { let n = g.node_count(); (Just(g), rating_vectors(n)) })) {
        let mut bytes = Vec::new();
        io::write_vectors(&m, g.labels().names(), &mut bytes).unwrap();
        let back = io::read_vectors(bytes.as_slice(), Path::new("v.tsv"), &g).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn metrics_csv_round_trip(values in prop::collection::vec((1..50usize, -0.5..1.0f64, -1.0..1.0f64, 0.0..1.0f64), 1..30)) {
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, (k, qn, ql, lm))| MetricRow {
                algorithm: ["LMM", "A", "GN"][i % 3].to_string(),
                k,
                modularity_newman: qn,
                modularity_literal: ql,
                like_mindedness: lm,
            })
            .collect();
        let series = MetricSeries { rows };
        let back = output::parse_metrics_csv(&output::metrics_csv(&series), Path::new("m.csv")).unwrap();
        prop_assert_eq!(back, series);
    }

    #[test]
    fn cache_round_trip(m in (2..20usize).prop_flat_map(rating_vectors)) {
        let s = m.similarity_matrix();
        let hash = similarity::content_hash(&m);
        let bytes = similarity::encode(&s, m.kind(), &hash);
        prop_assert_eq!(similarity::decode(&bytes, m.kind(), &hash).unwrap(), Some(s));
    }
}
