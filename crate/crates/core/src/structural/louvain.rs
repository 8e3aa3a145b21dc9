//! Local-moving modularity maximization.
//!
//! Nodes are swept in ascending order. Each node moves to the neighboring
//! community with the largest strictly positive gain (ties: smallest community
//! id). Gains are compared as exact integers, so a zero gain is never mistaken
//! for an improvement. The run ends after a sweep without moves.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modularity::{ModularityVariant, MoveLinks, PartitionStats, WeightedAdjacency};
use crate::partition::Partition;

/// Integer-weighted graph with self-loops, used for the mutable copy in the
/// similarity-augmented variant and for aggregated levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingGraph {
    adj: Vec<Vec<(usize, u64)>>,
    self_loops: Vec<u64>,
    degree: Vec<u64>,
    total: u64,
}

impl WorkingGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(usize, u64)>> =
            (0..g.node_count()).map(|v| g.neighbors(v).iter().map(|&w| (w, 1)).collect()).collect();
        let degree = adj.iter().map(|a| a.len() as u64).collect();
        WorkingGraph { adj, self_loops: vec![0; g.node_count()], degree, total: g.edge_count() as u64 }
    }

    /// Adds a unit edge between two distinct, not yet adjacent nodes.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].push((v, 1));
        self.adj[v].push((u, 1));
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.total += 1;
    }

    pub fn edge_count(&self) -> u64 {
        self.total
    }

    /// Collapses each community of `assignment` (ids `0..k`) into one node.
    fn aggregate(&self, assignment: &[usize], k: usize) -> Self {
        let mut weights: Vec<alloc::collections::BTreeMap<usize, u64>> = vec![Default::default(); k];
        let mut self_loops = vec![0u64; k];
        for (v, nbrs) in self.adj.iter().enumerate() {
            let cv = assignment[v];
            self_loops[cv] += self.self_loops[v];
            for &(w, weight) in nbrs {
                let cw = assignment[w];
                if cv == cw {
                    if v < w {
                        self_loops[cv] += weight;
                    }
                } else {
                    *weights[cv].entry(cw).or_insert(0) += weight;
                }
            }
        }
        let adj: Vec<Vec<(usize, u64)>> = weights.into_iter().map(|m| m.into_iter().collect()).collect();
        let degree = adj
            .iter()
            .zip(&self_loops)
            .map(|(a, &s)| a.iter().map(|&(_, w)| w).sum::<u64>() + 2 * s)
            .collect();
        WorkingGraph { adj, self_loops, degree, total: self.total }
    }
}

impl WeightedAdjacency for WorkingGraph {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn total_weight(&self) -> u64 {
        self.total
    }

    fn weighted_degree(&self, v: usize) -> u64 {
        self.degree[v]
    }

    fn self_loop(&self, v: usize) -> u64 {
        self.self_loops[v]
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize, u64)) {
        for &(w, weight) in &self.adj[v] {
            f(w, weight);
        }
    }
}

/// Scratch space for per-community link weights.
pub(crate) struct MoveScratch {
    weights: Vec<u64>,
    touched: Vec<usize>,
}

impl MoveScratch {
    pub(crate) fn new(capacity: usize) -> Self {
        MoveScratch { weights: vec![0; capacity], touched: Vec::new() }
    }
}

/// Best strictly improving move for `node`, if any.
pub(crate) fn best_move<A: WeightedAdjacency>(
    adj: &A,
    stats: &PartitionStats,
    node: usize,
    variant: ModularityVariant,
    scratch: &mut MoveScratch,
) -> Option<(usize, MoveLinks)> {
    let assignment = stats.assignment();
    let from = assignment[node];
    adj.for_each_neighbor(node, |w, weight| {
        let c = assignment[w];
        if scratch.weights[c] == 0 {
            scratch.touched.push(c);
        }
        scratch.weights[c] += weight;
    });
    let to_from = scratch.weights[from];
    let mut best: Option<(usize, MoveLinks, i128)> = None;
    for &c in &scratch.touched {
        if c == from {
            continue;
        }
        let links = MoveLinks { to_from, to_target: scratch.weights[c] };
        let gain = stats.gain_numerator(adj, node, c, links, variant);
        if gain <= 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, _, bg)) => gain > bg || (gain == bg && c < bc),
        };
        if better {
            best = Some((c, links, gain));
        }
    }
    for &c in &scratch.touched {
        scratch.weights[c] = 0;
    }
    scratch.touched.clear();
    best.map(|(c, links, _)| (c, links))
}

/// Runs sweeps until one makes no move. Returns the number of moves and the
/// modularity after each sweep that moved something.
fn local_moving<A: WeightedAdjacency>(
    adj: &A,
    stats: &mut PartitionStats,
    variant: ModularityVariant,
    trace: &mut Vec<f64>,
) -> usize {
    let mut scratch = MoveScratch::new(stats.capacity());
    let mut moves = 0;
    loop {
        let mut moved = false;
        for node in 0..adj.node_count() {
            if let Some((to, links)) = best_move(adj, stats, node, variant, &mut scratch) {
                stats.apply_move(adj, node, to, links);
                moves += 1;
                moved = true;
            }
        }
        if !moved {
            return moves;
        }
        trace.push(stats.modularity(variant));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LouvainConfig {
    pub variant: ModularityVariant,
    /// Coarsen communities into nodes and repeat until a level makes no move.
    pub aggregate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LouvainOutcome {
    pub partition: Partition,
    /// Modularity of the starting singletons, then after every sweep that moved a node.
    pub trace: Vec<f64>,
    pub moves: usize,
    pub levels: usize,
}

/// Single-level local moving from singletons.
pub fn louvain(g: &Graph, variant: ModularityVariant) -> Result<LouvainOutcome> {
    louvain_with(g, LouvainConfig { variant, aggregate: false })
}

pub fn louvain_with(g: &Graph, config: LouvainConfig) -> Result<LouvainOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let n = g.node_count();
    let variant = config.variant;
    let mut working = WorkingGraph::from_graph(g);
    let identity: Vec<usize> = (0..n).collect();
    let mut node_to_level: Vec<usize> = identity.clone();
    let mut stats = PartitionStats::new(&working, &identity, n);
    let mut trace = vec![stats.modularity(variant)];
    let mut moves = 0;
    let mut levels = 0;
    loop {
        let level_moves = local_moving(&working, &mut stats, variant, &mut trace);
        levels += 1;
        moves += level_moves;
        let level = Partition::from_assignment(stats.assignment());
        for c in node_to_level.iter_mut() {
            *c = level.community_of(*c);
        }
        if !config.aggregate || level_moves == 0 || level.community_count() == working.node_count() {
            break;
        }
        working = working.aggregate(level.assignment(), level.community_count());
        let k = level.community_count();
        let identity: Vec<usize> = (0..k).collect();
        stats = PartitionStats::new(&working, &identity, k);
    }
    Ok(LouvainOutcome { partition: Partition::from_assignment(&node_to_level), trace, moves, levels })
}
