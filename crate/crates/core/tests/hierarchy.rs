mod common;

use common::oracle::{self, Rule};
use likemind_core::hier::{MergeRule, MergeState};
use likemind_core::structural::girvan_newman;
use likemind_core::sweep::{run_algorithm, AlgorithmCode, SimSources, SweepConfig};
use likemind_core::{agglomerate, like_mindedness, lmm_agglomerate, Dendrogram, Graph, Linkage, SimMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn merges(d: &Dendrogram) -> Vec<(usize, usize, f64)> {
    d.merges().iter().map(|m| (m.a, m.b, m.score)).collect()
}

fn random_sims(rng: &mut ChaCha8Rng) -> SimMatrix {
    let n = rng.gen_range(2..=8);
    SimMatrix::from_upper_triangle(n, oracle::dyadic_sims(rng, n)).unwrap()
}

#[test]
fn lmm_equals_rescan_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let s = random_sims(&mut rng);
        let expected = oracle::agglomerate(s.size(), |u, v| s.get(u, v), Rule::LikeMindedness);
        assert_eq!(merges(&lmm_agglomerate(&s)), expected);
    }
}

#[test]
fn lmm_ties_break_lexicographically() {
    // Coarse similarities make many equal scores.
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..50 {
        let n = rng.gen_range(3..=8);
        let values = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..=2) as f64 / 2.0).collect();
        let s = SimMatrix::from_upper_triangle(n, values).unwrap();
        let expected = oracle::agglomerate(n, |u, v| s.get(u, v), Rule::LikeMindedness);
        assert_eq!(merges(&lmm_agglomerate(&s)), expected);
    }
}

#[test]
fn linkages_equal_rescan_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let s = random_sims(&mut rng);
        for (linkage, rule) in [(Linkage::Single, Rule::Single), (Linkage::Average, Rule::Average), (Linkage::Complete, Rule::Complete)] {
            let expected = oracle::agglomerate(s.size(), |u, v| s.get(u, v), rule);
            assert_eq!(merges(&agglomerate(&s, linkage)), expected, "{linkage:?}");
        }
    }
}

#[test]
fn similarity_reads_stay_within_pair_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let s = SimMatrix::from_upper_triangle(40, oracle::dyadic_sims(&mut rng, 40)).unwrap();
    let mut state = MergeState::new(&s, MergeRule::LikeMindedness);
    while state.step().is_some() {}
    assert_eq!(state.sim_reads(), 40 * 39 / 2);
}

#[test]
fn cuts_are_nested() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..20 {
        let s = random_sims(&mut rng);
        let n = s.size();
        let g = Graph::from_edges(n, oracle::random_graph(&mut rng, n, 0.5)).unwrap();
        let mut dendrograms = vec![lmm_agglomerate(&s), girvan_newman(&g).dendrogram];
        for linkage in [Linkage::Single, Linkage::Average, Linkage::Complete] {
            dendrograms.push(agglomerate(&s, linkage));
        }
        for d in &dendrograms {
            let lo = d.min_k().max(1);
            for k in lo..=n {
                let p = d.cut(k).unwrap();
                assert_eq!(p.community_count(), k);
                if k < n {
                    assert!(d.cut(k + 1).unwrap().refines(&p));
                }
            }
            assert!(d.cut(lo.saturating_sub(1)).is_err() || lo == 1);
            assert!(d.cut(n + 1).is_err());
        }
    }
}

#[test]
fn sweep_rows_match_independent_scores() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..20 {
        let s = random_sims(&mut rng);
        let n = s.size();
        let edges = oracle::random_graph(&mut rng, n, 0.5);
        if edges.is_empty() {
            continue;
        }
        let g = Graph::from_edges(n, edges).unwrap();
        for code in ["LMM", "GN", "S", "A", "C"] {
            let code = AlgorithmCode::parse(code).unwrap();
            let run = run_algorithm(code, &g, &SimSources::primary(&s), SweepConfig::default()).unwrap();
            let d = run.dendrogram.as_ref().unwrap();
            let ks: Vec<usize> = run.rows.iter().map(|r| r.k).collect();
            let expected: Vec<usize> = (d.min_k().max(1)..=n).rev().collect();
            assert_eq!(ks, expected);
            for row in &run.rows {
                let p = d.cut(row.k).unwrap();
                let lm = oracle::like_mindedness(n, |u, v| s.get(u, v), p.assignment());
                assert!((row.like_mindedness - lm).abs() < 1e-12);
                assert!((row.like_mindedness - like_mindedness(&s, &p).unwrap()).abs() < 1e-12);
                assert!((row.modularity_newman - oracle::modularity(g.edges(), p.assignment(), false)).abs() < 1e-12);
                assert!((row.modularity_literal - oracle::modularity(g.edges(), p.assignment(), true)).abs() < 1e-12);
            }
        }
    }
}
