use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// One agglomeration step: communities `a < b` become `merged` (always `a`,
/// the smallest node of the union).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub merged: usize,
    pub score: f64,
}

/// Bottom-up merge sequence over `leaf_count` singletons.
///
/// A full run has `leaf_count − 1` merges. Divisive runs on disconnected
/// graphs stop early, so the coarsest reachable level is [`Dendrogram::min_k`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    leaf_count: usize,
    merges: Vec<Merge>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }
}

impl Dendrogram {
    /// Validates that each merge joins two live communities named by their
    /// smallest node.
    pub fn new(leaf_count: usize, merges: Vec<Merge>) -> Result<Self> {
        let mut live: Vec<bool> = alloc::vec![true; leaf_count];
        for m in &merges {
            if m.a >= m.b || m.b >= leaf_count || m.merged != m.a {
                return Err(Error::InvalidPartition("malformed merge step"));
            }
            if !live[m.a] || !live[m.b] {
                return Err(Error::InactiveCommunity(if live[m.a] { m.b } else { m.a }));
            }
            live[m.b] = false;
        }
        Ok(Dendrogram { leaf_count, merges })
    }

    pub(crate) fn from_trusted(leaf_count: usize, merges: Vec<Merge>) -> Self {
        Dendrogram { leaf_count, merges }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// Smallest community count any cut can produce.
    pub fn min_k(&self) -> usize {
        self.leaf_count - self.merges.len()
    }

    /// Partition after replaying the first `leaf_count − k` merges.
    pub fn cut(&self, k: usize) -> Result<Partition> {
        if k < self.min_k().max(1) || k > self.leaf_count {
            return Err(Error::LevelOutOfRange { k, min: self.min_k().max(1), max: self.leaf_count });
        }
        let mut uf = UnionFind::new(self.leaf_count);
        for m in &self.merges[..self.leaf_count - k] {
            let (ra, rb) = (uf.find(m.a), uf.find(m.b));
            uf.parent[rb] = ra;
        }
        let roots: Vec<usize> = (0..self.leaf_count).map(|v| uf.find(v)).collect();
        Ok(Partition::from_assignment(&roots))
    }
}

/// Free-function form of [`Dendrogram::cut`].
pub fn cut(d: &Dendrogram, k: usize) -> Result<Partition> {
    d.cut(k)
}
