mod common;

use common::oracle;
use likemind_core::pipeline::{
    build_interest_vectors, build_rating_vectors, movie_filter, mutual_friend_graph, ratings_pipeline, user_filter,
    FilterConfig, FollowTable, ItemIndex, RatingsTable,
};
use likemind_core::{
    cosine_similarity, homophily_ratio, like_mindedness, BehavioralMatrix, Error, Graph, Partition, SimMatrix,
    SparseVector, VectorKind,
};
use proptest::prelude::*;

fn edges_strategy(max_nodes: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_nodes).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..3 * n)))
}

fn dense_vec(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0..5.0f64], d)
}

proptest! {
    #[test]
    fn rebuilding_from_edges_is_identity((n, edges) in edges_strategy(12)) {
        let g = Graph::from_edges(n, edges).unwrap();
        let again = Graph::from_edges(n, g.edges().iter().copied()).unwrap();
        prop_assert_eq!(&g, &again);
        for v in 0..n {
            prop_assert!(!g.has_edge(v, v));
            for &w in g.neighbors(v) {
                prop_assert!(g.neighbors(w).contains(&v));
            }
        }
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn components_match_reachability((n, edges) in edges_strategy(10)) {
        let g = Graph::from_edges(n, edges).unwrap();
        let expected = Partition::from_assignment(&oracle::components(n, g.edges()));
        prop_assert_eq!(g.connected_components(), expected);
    }

    #[test]
    fn full_induced_subgraph_is_identity((n, edges) in edges_strategy(10)) {
        let g = Graph::from_edges(n, edges).unwrap();
        let all: Vec<usize> = (0..n).collect();
        prop_assert_eq!(g.induced_subgraph(&all).unwrap(), g);
    }

    #[test]
    fn cosine_is_symmetric_scale_free_and_bounded(
        (x, y) in (1usize..12).prop_flat_map(|d| (dense_vec(d), dense_vec(d))),
        c in 0.01..100.0f64,
    ) {
        let xy = cosine_similarity(&x, &y).unwrap();
        prop_assert_eq!(xy, cosine_similarity(&y, &x).unwrap());
        prop_assert!((0.0..=1.0).contains(&xy));
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        prop_assert!((cosine_similarity(&scaled, &y).unwrap() - xy).abs() < 1e-12);
    }

    #[test]
    fn similarity_matrix_matches_double_loop(
        rows in (1usize..8).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0u8..=1, d), 1..8))
    ) {
        let d = rows[0].len();
        let dense: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&b| b as f64).collect()).collect();
        let m = BehavioralMatrix::new(
            VectorKind::Interest,
            d,
            dense.iter().map(|r| SparseVector::from_dense(r)).collect(),
        ).unwrap();
        let s = m.similarity_matrix();
        for u in 0..dense.len() {
            for v in u + 1..dense.len() {
                let dot: f64 = dense[u].iter().zip(&dense[v]).map(|(a, b)| a * b).sum();
                let nu: f64 = dense[u].iter().map(|a| a * a).sum();
                let nv: f64 = dense[v].iter().map(|a| a * a).sum();
                let expected = if nu == 0.0 || nv == 0.0 { 0.0 } else { dot / (nu.sqrt() * nv.sqrt()) };
                prop_assert!((s.get(u, v) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn like_mindedness_matches_naive(
        (n, values, raw) in (1usize..=7).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(0.0..=1.0f64, n * (n - 1) / 2),
            prop::collection::vec(0..n, n),
        ))
    ) {
        let s = SimMatrix::from_upper_triangle(n, values).unwrap();
        let p = Partition::from_assignment(&raw);
        let expected = oracle::like_mindedness(n, |u, v| s.get(u, v), p.assignment());
        prop_assert!((like_mindedness(&s, &p).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn interest_is_rating_support(
        records in prop::collection::vec((0u8..6, 0u8..8, 1u8..=5), 0..40)
    ) {
        let names: Vec<(String, String, u8)> =
            records.iter().map(|&(u, i, r)| (format!("u{u}"), format!("m{i}"), r)).collect();
        let table = RatingsTable::from_records(names.iter().map(|(u, i, r)| (u.as_str(), i.as_str(), *r))).unwrap();
        let index = ItemIndex::from_ratings(&table);
        let users: Vec<String> = (0..6).map(|u| format!("u{u}")).collect();
        let r = build_rating_vectors(&table, &index, &users).unwrap().matrix;
        let s = build_interest_vectors(&table, &index, &users).unwrap().matrix;
        for u in 0..users.len() {
            let support: Vec<u32> = r.vector(u).entries().iter().map(|&(i, _)| i).collect();
            let ones: Vec<u32> = s.vector(u).entries().iter().map(|&(i, _)| i).collect();
            prop_assert_eq!(support, ones);
            prop_assert!(s.vector(u).entries().iter().all(|&(_, v)| v == 1.0));
        }
    }

    #[test]
    fn raising_thresholds_never_grows_the_kept_set(
        follows in prop::collection::vec((0u8..10, 0u8..10), 0..60),
        ratings in prop::collection::vec((0u8..10, 0u8..6, 1u8..=5), 0..60),
        min_ratings in 0usize..4,
        min_friends in 0usize..4,
    ) {
        let f = FollowTable::from_records(follows.iter().map(|&(a, b)| (label(a), label(b))));
        prop_assume!(!f.is_empty());
        let names: Vec<(String, String)> = ratings.iter().map(|&(u, i, _)| (label(u).to_string(), format!("m{i}"))).collect();
        let table = RatingsTable::from_records(
            names.iter().zip(&ratings).map(|((u, i), &(_, _, r))| (u.as_str(), i.as_str(), r)),
        ).unwrap();
        let g = mutual_friend_graph(&f).unwrap();
        let filtered = movie_filter(&table, 4).unwrap();
        let base = user_filter(&filtered, &g, min_ratings, min_friends);
        for (r, fr) in [(min_ratings + 1, min_friends), (min_ratings, min_friends + 1)] {
            let tighter = user_filter(&filtered, &g, r, fr);
            prop_assert!(tighter.iter().all(|v| base.contains(v)));
        }
    }
}

fn label(i: u8) -> &'static str {
    ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"][i as usize]
}

#[test]
fn homophily_fixtures() {
    let cluster = |v: usize| v / 4;
    let s = SimMatrix::from_fn(8, |u, v| if cluster(u) == cluster(v) { 0.9 } else { 0.1 }).unwrap();
    let edges: Vec<(usize, usize)> =
        (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))).filter(|&(u, v)| cluster(u) == cluster(v) && (u + v) % 3 != 0).collect();
    let g = Graph::from_edges(8, edges).unwrap();
    // Non-edges include some intra-cluster pairs, so the denominator mixes 0.9 and 0.1.
    let (mut on, mut off, mut n_on, mut n_off) = (0.0, 0.0, 0, 0);
    for u in 0..8 {
        for v in u + 1..8 {
            if g.has_edge(u, v) {
                on += s.get(u, v);
                n_on += 1;
            } else {
                off += s.get(u, v);
                n_off += 1;
            }
        }
    }
    assert!((homophily_ratio(&g, &s).unwrap() - (on / n_on as f64) / (off / n_off as f64)).abs() < 1e-12);

    let complete_clusters: Vec<(usize, usize)> =
        (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))).filter(|&(u, v)| cluster(u) == cluster(v)).collect();
    let g = Graph::from_edges(8, complete_clusters).unwrap();
    assert!((homophily_ratio(&g, &s).unwrap() - 9.0).abs() < 1e-9);

    let uniform = SimMatrix::from_fn(8, |_, _| 0.37).unwrap();
    assert_eq!(homophily_ratio(&g, &uniform).unwrap(), 1.0);

    let zero = SimMatrix::from_fn(8, |u, v| if cluster(u) == cluster(v) { 0.5 } else { 0.0 }).unwrap();
    assert_eq!(homophily_ratio(&g, &zero), Err(Error::ZeroNonEdgeSimilarity));
}

#[test]
fn pipeline_reruns_are_identical() {
    let mut follows = Vec::new();
    for a in 0..8u8 {
        for b in 0..8u8 {
            if a != b && (a + b) % 3 != 0 {
                follows.push((label(a), label(b)));
            }
        }
    }
    let f = FollowTable::from_records(follows);
    let mut rows = Vec::new();
    for u in 0..8u8 {
        for m in 0..6u8 {
            if (u + m) % 2 == 0 || m == 0 {
                rows.push((label(u).to_string(), format!("m{m}"), 1 + (u + m) % 5));
            }
        }
    }
    let table = RatingsTable::from_records(rows.iter().map(|(u, i, r)| (u.as_str(), i.as_str(), *r))).unwrap();
    let config = FilterConfig { movie_max_popularity: 8, min_ratings: 2, min_friends: 2, ..FilterConfig::default() };
    let first = ratings_pipeline(&table, &f, &config).unwrap();
    let second = ratings_pipeline(&table, &f, &config).unwrap();
    assert_eq!(first, second);
    // m0 is rated by all eight users and falls to the popularity filter.
    assert!(first.items.position("m0").is_none());
    assert!(first.graph.node_count() > 0);
}
