//! Modularity and its incremental move gain.
//!
//! Both variants are evaluated in exact integer arithmetic and converted to
//! `f64` only at the end. With `m` edges, community `c` holding `I_c` internal
//! edges and endpoint (degree) sum `D_c`:
//!
//! * `Newman`: `Q = Σ_c (I_c/m − (D_c/2m)²)`, i.e. `Σ_c (4m·I_c − D_c²) / 4m²`;
//! * `Literal`: `Q = Σ_c (I_c/m − (X_c/m)²)` where `X_c = D_c − I_c` counts the
//!   edges with at least one endpoint in `c`, i.e. `Σ_c (m·I_c − X_c²) / m²`.
//!
//! `Literal` can fall below −1/2 (two singletons joined by an edge score −2);
//! `Newman` stays within [−1/2, 1).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModularityVariant {
    #[default]
    Newman,
    Literal,
}

impl ModularityVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ModularityVariant::Newman => "newman",
            ModularityVariant::Literal => "literal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "newman" => Some(ModularityVariant::Newman),
            "literal" | "paper_literal" | "paper-literal" => Some(ModularityVariant::Literal),
            _ => None,
        }
    }
}

/// Integer-weighted adjacency, possibly with self-loops.
///
/// A self-loop of weight `w` contributes `w` to the total weight and `2w` to
/// the node's weighted degree.
pub trait WeightedAdjacency {
    fn node_count(&self) -> usize;
    fn total_weight(&self) -> u64;
    fn weighted_degree(&self, v: usize) -> u64;
    fn self_loop(&self, v: usize) -> u64;
    /// Calls `f(neighbor, weight)` for every non-loop neighbor of `v`.
    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize, u64));
}

impl WeightedAdjacency for Graph {
    fn node_count(&self) -> usize {
        Graph::node_count(self)
    }

    fn total_weight(&self) -> u64 {
        self.edge_count() as u64
    }

    fn weighted_degree(&self, v: usize) -> u64 {
        self.degree(v) as u64
    }

    fn self_loop(&self, _v: usize) -> u64 {
        0
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize, u64)) {
        for &w in self.neighbors(v) {
            f(w, 1);
        }
    }
}

/// Per-community edge counters for a node labelling.
///
/// Community ids are arbitrary indices below `capacity`; empty ids are allowed,
/// which lets local-moving keep a fixed id space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    assignment: Vec<usize>,
    internal: Vec<u64>,
    degree_sum: Vec<u64>,
    total: u64,
}

/// Edge weight from a node into its current and target communities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveLinks {
    pub to_from: u64,
    pub to_target: u64,
}

impl PartitionStats {
    pub fn new<A: WeightedAdjacency>(adj: &A, assignment: &[usize], capacity: usize) -> Self {
        let mut internal = vec![0u64; capacity];
        let mut degree_sum = vec![0u64; capacity];
        for v in 0..adj.node_count() {
            let c = assignment[v];
            degree_sum[c] += adj.weighted_degree(v);
            internal[c] += adj.self_loop(v);
            adj.for_each_neighbor(v, |w, weight| {
                if w > v && assignment[w] == c {
                    internal[c] += weight;
                }
            });
        }
        PartitionStats { assignment: assignment.to_vec(), internal, degree_sum, total: adj.total_weight() }
    }

    pub fn from_partition(g: &Graph, p: &Partition) -> Result<Self> {
        if p.node_count() != g.node_count() {
            return Err(Error::SizeMismatch { left: p.node_count(), right: g.node_count() });
        }
        Ok(Self::new(g, p.assignment(), p.community_count()))
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn capacity(&self) -> usize {
        self.internal.len()
    }

    pub fn total_edges(&self) -> u64 {
        self.total
    }

    pub fn internal(&self, c: usize) -> u64 {
        self.internal[c]
    }

    pub fn degree_sum(&self, c: usize) -> u64 {
        self.degree_sum[c]
    }

    /// Edges with at least one endpoint in `c`.
    pub fn incident(&self, c: usize) -> u64 {
        self.degree_sum[c] - self.internal[c]
    }

    /// Edges with exactly one endpoint in `c`.
    pub fn boundary(&self, c: usize) -> u64 {
        self.degree_sum[c] - 2 * self.internal[c]
    }

    fn term(&self, variant: ModularityVariant, internal: u64, degree_sum: u64) -> i128 {
        let m = self.total as i128;
        let (i, d) = (internal as i128, degree_sum as i128);
        match variant {
            ModularityVariant::Newman => 4 * m * i - d * d,
            ModularityVariant::Literal => m * i - (d - i) * (d - i),
        }
    }

    fn scale(&self, variant: ModularityVariant) -> i128 {
        let m = self.total as i128;
        match variant {
            ModularityVariant::Newman => 4 * m * m,
            ModularityVariant::Literal => m * m,
        }
    }

    /// Modularity as an exact fraction `(numerator, denominator)`.
    pub fn modularity_fraction(&self, variant: ModularityVariant) -> (i128, i128) {
        let numerator = (0..self.capacity())
            .filter(|&c| self.degree_sum[c] > 0 || self.internal[c] > 0)
            .map(|c| self.term(variant, self.internal[c], self.degree_sum[c]))
            .sum();
        (numerator, self.scale(variant))
    }

    pub fn modularity(&self, variant: ModularityVariant) -> f64 {
        let (num, den) = self.modularity_fraction(variant);
        if den == 0 {
            return 0.0;
        }
        num as f64 / den as f64
    }

    /// Weights from `node` into its own community (excluding itself) and into `to`.
    pub fn links<A: WeightedAdjacency>(&self, adj: &A, node: usize, to: usize) -> MoveLinks {
        let from = self.assignment[node];
        let mut links = MoveLinks { to_from: 0, to_target: 0 };
        adj.for_each_neighbor(node, |w, weight| {
            let c = self.assignment[w];
            if c == from {
                links.to_from += weight;
            }
            if c == to {
                links.to_target += weight;
            }
        });
        links
    }

    /// Gain numerator over the variant's scale (`4m²` or `m²`) for moving `node`
    /// to `to`, given its link weights.
    pub fn gain_numerator<A: WeightedAdjacency>(
        &self,
        adj: &A,
        node: usize,
        to: usize,
        links: MoveLinks,
        variant: ModularityVariant,
    ) -> i128 {
        let from = self.assignment[node];
        if from == to {
            return 0;
        }
        let k = adj.weighted_degree(node);
        let s = adj.self_loop(node);
        let (ia, da) = (self.internal[from], self.degree_sum[from]);
        let (ib, db) = (self.internal[to], self.degree_sum[to]);
        let before = self.term(variant, ia, da) + self.term(variant, ib, db);
        let after = self.term(variant, ia - links.to_from - s, da - k)
            + self.term(variant, ib + links.to_target + s, db + k);
        after - before
    }

    pub fn gain_scale(&self, variant: ModularityVariant) -> i128 {
        self.scale(variant)
    }

    /// Moves `node` to `to`, updating the counters.
    pub fn apply_move<A: WeightedAdjacency>(&mut self, adj: &A, node: usize, to: usize, links: MoveLinks) {
        let from = self.assignment[node];
        if from == to {
            return;
        }
        let k = adj.weighted_degree(node);
        let s = adj.self_loop(node);
        self.internal[from] -= links.to_from + s;
        self.degree_sum[from] -= k;
        self.internal[to] += links.to_target + s;
        self.degree_sum[to] += k;
        self.assignment[node] = to;
    }

    /// Accounts for a new unit edge `u–v` in the underlying graph.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        let (cu, cv) = (self.assignment[u], self.assignment[v]);
        self.degree_sum[cu] += 1;
        self.degree_sum[cv] += 1;
        if cu == cv {
            self.internal[cu] += 1;
        }
        self.total += 1;
    }
}

/// Modularity of `p` on `g`.
pub fn modularity(g: &Graph, p: &Partition, variant: ModularityVariant) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    Ok(PartitionStats::from_partition(g, p)?.modularity(variant))
}

/// Change in modularity from moving `node` out of `from` into `to`, in O(deg(node)).
///
/// `to` may be any id below `stats.capacity()`, including an empty one.
pub fn modularity_delta(
    stats: &PartitionStats,
    g: &Graph,
    node: usize,
    from: usize,
    to: usize,
    variant: ModularityVariant,
) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    if node >= stats.assignment.len() {
        return Err(Error::NodeOutOfRange { node, node_count: stats.assignment.len() });
    }
    if stats.assignment[node] != from {
        return Err(Error::CommunityMismatch { node, community: from });
    }
    if to >= stats.capacity() {
        return Err(Error::UnknownCommunity(to));
    }
    let links = stats.links(g, node, to);
    let num = stats.gain_numerator(g, node, to, links, variant);
    Ok(num as f64 / stats.scale(variant) as f64)
}
