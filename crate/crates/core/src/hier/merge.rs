//! Agglomeration driven by pairwise similarity.
//!
//! Linkage clustering and like-mindedness maximization share one engine: every
//! live community pair keeps an aggregate of its cross similarities (minimum,
//! maximum or sum) and the current score sits in a max-heap. Merging `A` and `B`
//! combines `agg(A, K)` with `agg(B, K)` for every other `K`, so similarities
//! are read only once, when the singleton aggregates are seeded. Stale heap
//! entries are skipped through a per-pair version counter.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::behavior::SimMatrix;
use crate::error::{Error, Result};
use crate::hier::dendrogram::{Dendrogram, Merge};

/// Cross-community score used by hierarchical clustering.
///
/// Names follow the usual table of linkage criteria over similarities:
/// `Single` is the minimum cross similarity, `Complete` the maximum,
/// `Average` the mean. The pair with the highest score merges first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linkage {
    Single,
    Average,
    Complete,
}

impl Linkage {
    pub fn as_str(self) -> &'static str {
        match self {
            Linkage::Single => "single",
            Linkage::Average => "average",
            Linkage::Complete => "complete",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "single" => Some(Linkage::Single),
            "average" => Some(Linkage::Average),
            "complete" => Some(Linkage::Complete),
            _ => None,
        }
    }
}

/// What the engine maximizes at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergeRule {
    Linkage(Linkage),
    /// `1 / max(|A|, |B|) + Σ sim(u, v) / (|A|·|B|)`.
    LikeMindedness,
}

/// Linkage score between two disjoint, non-empty node sets, by direct evaluation.
pub fn linkage_score(s: &SimMatrix, a: &[usize], b: &[usize], linkage: Linkage) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidSets("empty community"));
    }
    if a.iter().any(|u| b.contains(u)) {
        return Err(Error::InvalidSets("communities overlap"));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&v| v >= s.size()) {
        return Err(Error::NodeOutOfRange { node: bad, node_count: s.size() });
    }
    let cross = a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v)));
    Ok(match linkage {
        Linkage::Single => cross.map(|(u, v)| s.get(u, v)).fold(f64::INFINITY, f64::min),
        Linkage::Complete => cross.map(|(u, v)| s.get(u, v)).fold(f64::NEG_INFINITY, f64::max),
        Linkage::Average => {
            cross.map(|(u, v)| s.get(u, v)).sum::<f64>() / (a.len() as f64 * b.len() as f64)
        }
    })
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    score: f64,
    a: u32,
    b: u32,
    version: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Highest score first; among equal scores the lexicographically smallest pair.
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
            .then_with(|| self.version.cmp(&other.version))
    }
}

/// Live state of an agglomeration run.
///
/// Communities are identified by their smallest node.
#[derive(Debug, Clone)]
pub struct MergeState {
    rule: MergeRule,
    n: usize,
    active: Vec<bool>,
    active_count: usize,
    size: Vec<usize>,
    aggregate: Vec<f64>,
    version: Vec<u32>,
    heap: BinaryHeap<Entry>,
    sim_reads: u64,
}

#[inline]
fn tri(n: usize, a: usize, b: usize) -> usize {
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl MergeState {
    pub fn new(sim: &SimMatrix, rule: MergeRule) -> Self {
        let n = sim.size();
        let pairs = n * n.saturating_sub(1) / 2;
        let mut state = MergeState {
            rule,
            n,
            active: vec![true; n],
            active_count: n,
            size: vec![1; n],
            aggregate: Vec::with_capacity(pairs),
            version: vec![0; pairs],
            heap: BinaryHeap::new(),
            sim_reads: 0,
        };
        for u in 0..n {
            for v in u + 1..n {
                state.aggregate.push(sim.get(u, v));
                state.sim_reads += 1;
            }
        }
        let mut entries = Vec::with_capacity(pairs);
        for u in 0..n {
            for v in u + 1..n {
                entries.push(state.entry(u, v));
            }
        }
        state.heap = BinaryHeap::from(entries);
        state
    }

    pub fn rule(&self) -> MergeRule {
        self.rule
    }

    /// Number of similarity lookups made so far; stays at `n(n−1)/2`.
    pub fn sim_reads(&self) -> u64 {
        self.sim_reads
    }

    pub fn is_active(&self, c: usize) -> bool {
        c < self.n && self.active[c]
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn size(&self, c: usize) -> usize {
        self.size[c]
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        for c in [a, b] {
            if !self.is_active(c) {
                return Err(Error::InactiveCommunity(c));
            }
        }
        if a == b {
            return Err(Error::InvalidSets("a community cannot pair with itself"));
        }
        Ok(())
    }

    /// Cross aggregate of two live communities: the similarity sum for average
    /// linkage and like-mindedness maximization, the min or max otherwise.
    pub fn pair_aggregate(&self, a: usize, b: usize) -> Result<f64> {
        self.check_pair(a, b)?;
        Ok(self.aggregate[tri(self.n, a, b)])
    }

    /// Current merge score of two live communities.
    pub fn score(&self, a: usize, b: usize) -> Result<f64> {
        self.check_pair(a, b)?;
        Ok(self.raw_score(a, b))
    }

    fn raw_score(&self, a: usize, b: usize) -> f64 {
        let agg = self.aggregate[tri(self.n, a, b)];
        let (sa, sb) = (self.size[a], self.size[b]);
        match self.rule {
            MergeRule::Linkage(Linkage::Single | Linkage::Complete) => agg,
            MergeRule::Linkage(Linkage::Average) => agg / (sa as f64 * sb as f64),
            MergeRule::LikeMindedness => 1.0 / sa.max(sb) as f64 + agg / (sa as f64 * sb as f64),
        }
    }

    fn entry(&self, a: usize, b: usize) -> Entry {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Entry { score: self.raw_score(u, v), a: u as u32, b: v as u32, version: self.version[tri(self.n, u, v)] }
    }

    fn combine(&self, x: f64, y: f64) -> f64 {
        match self.rule {
            MergeRule::Linkage(Linkage::Single) => x.min(y),
            MergeRule::Linkage(Linkage::Complete) => x.max(y),
            MergeRule::Linkage(Linkage::Average) | MergeRule::LikeMindedness => x + y,
        }
    }

    fn is_live(&self, e: &Entry) -> bool {
        let (a, b) = (e.a as usize, e.b as usize);
        self.active[a] && self.active[b] && self.version[tri(self.n, a, b)] == e.version
    }

    fn compact(&mut self) {
        let mut heap = core::mem::take(&mut self.heap).into_vec();
        heap.retain(|e| self.is_live(e));
        self.heap = BinaryHeap::from(heap);
    }

    /// Performs the best merge, or returns `None` once one community remains.
    pub fn step(&mut self) -> Option<Merge> {
        let top = loop {
            let e = self.heap.pop()?;
            if self.is_live(&e) {
                break e;
            }
        };
        let (a, b) = (top.a as usize, top.b as usize);
        self.active[b] = false;
        self.active_count -= 1;
        for k in 0..self.n {
            if k == a || !self.active[k] {
                continue;
            }
            let ak = tri(self.n, a, k);
            self.aggregate[ak] = self.combine(self.aggregate[ak], self.aggregate[tri(self.n, b, k)]);
            self.version[ak] = self.version[ak].wrapping_add(1);
        }
        self.size[a] += self.size[b];
        for k in 0..self.n {
            if k != a && self.active[k] {
                let e = self.entry(a, k);
                self.heap.push(e);
            }
        }
        let live_pairs = self.active_count * self.active_count.saturating_sub(1) / 2;
        if self.heap.len() > 2 * live_pairs + 64 {
            self.compact();
        }
        Some(Merge { a, b, merged: a, score: top.score })
    }

    pub fn run(mut self) -> Dendrogram {
        let mut merges = Vec::with_capacity(self.n.saturating_sub(1));
        while let Some(m) = self.step() {
            merges.push(m);
        }
        Dendrogram::from_trusted(self.n, merges)
    }
}

/// Hierarchical clustering: repeatedly merges the pair with the highest linkage
/// score, ties going to the lexicographically smallest `(a, b)`.
pub fn agglomerate(s: &SimMatrix, linkage: Linkage) -> Dendrogram {
    MergeState::new(s, MergeRule::Linkage(linkage)).run()
}

/// Like-mindedness maximization: repeatedly merges the pair with the highest
/// size-penalized mean cross similarity.
pub fn lmm_agglomerate(s: &SimMatrix) -> Dendrogram {
    MergeState::new(s, MergeRule::LikeMindedness).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linkage_formulas() {
        // 0,1 on one side, 2 on the other: sims 0.2 and 0.8.
        let s = SimMatrix::from_upper_triangle(3, vec![0.5, 0.2, 0.8]).unwrap();
        assert_eq!(linkage_score(&s, &[0, 1], &[2], Linkage::Single).unwrap(), 0.2);
        assert_eq!(linkage_score(&s, &[0, 1], &[2], Linkage::Average).unwrap(), 0.5);
        assert_eq!(linkage_score(&s, &[0, 1], &[2], Linkage::Complete).unwrap(), 0.8);
        for l in [Linkage::Single, Linkage::Average, Linkage::Complete] {
            assert_eq!(linkage_score(&s, &[0], &[1], l).unwrap(), 0.5);
        }
        assert!(linkage_score(&s, &[], &[1], Linkage::Single).is_err());
        assert!(linkage_score(&s, &[0, 1], &[1], Linkage::Single).is_err());
    }

    #[test]
    fn two_nodes_one_merge() {
        let s = SimMatrix::from_upper_triangle(2, vec![0.3]).unwrap();
        let d = agglomerate(&s, Linkage::Average);
        assert_eq!(d.merges(), &[Merge { a: 0, b: 1, merged: 0, score: 0.3 }]);
    }

    #[test]
    fn planted_pairs_recovered() {
        // {0,2} and {1,3} identical pairs, orthogonal across.
        let s = SimMatrix::from_fn(4, |u, v| if u % 2 == v % 2 { 1.0 } else { 0.0 }).unwrap();
        for l in [Linkage::Single, Linkage::Average, Linkage::Complete] {
            let d = agglomerate(&s, l);
            assert_eq!(d.merges().len(), 3);
            assert_eq!(d.cut(2).unwrap().assignment(), &[0, 1, 0, 1]);
        }
    }

    #[test]
    fn lmm_score_examples() {
        let s = SimMatrix::from_upper_triangle(2, vec![0.5]).unwrap();
        let state = MergeState::new(&s, MergeRule::LikeMindedness);
        assert_eq!(state.score(0, 1).unwrap(), 1.5);

        // {0,1} and {2,3,4} are internally identical and orthogonal to each other.
        let blocks = SimMatrix::from_fn(5, |u, v| if (u < 2) == (v < 2) { 1.0 } else { 0.0 }).unwrap();
        let mut state = MergeState::new(&blocks, MergeRule::LikeMindedness);
        while state.active_count() > 2 {
            state.step();
        }
        assert_eq!((state.size(0), state.size(2)), (2, 3));
        assert!((state.score(0, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(state.pair_aggregate(0, 2).unwrap(), 0.0);
        assert!(state.score(0, 0).is_err());
    }

    #[test]
    fn lmm_prefers_similar_singletons() {
        let s = SimMatrix::from_upper_triangle(3, vec![0.9, 0.1, 0.1]).unwrap();
        let d = lmm_agglomerate(&s);
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 1));
        assert!((d.merges()[0].score - 1.9).abs() < 1e-15);
    }

    #[test]
    fn equal_sims_merge_lowest_pair_first() {
        let s = SimMatrix::from_fn(4, |_, _| 0.25).unwrap();
        let d = lmm_agglomerate(&s);
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 1));
    }

    #[test]
    fn inactive_ids_rejected() {
        let s = SimMatrix::from_upper_triangle(3, vec![0.9, 0.1, 0.1]).unwrap();
        let mut state = MergeState::new(&s, MergeRule::LikeMindedness);
        state.step();
        assert_eq!(state.score(1, 2), Err(Error::InactiveCommunity(1)));
        assert_eq!(state.sim_reads(), 3);
    }
}
