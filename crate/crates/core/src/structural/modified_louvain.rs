//! Local moving on a copy of the graph that gains similarity edges as the
//! communities form.
//!
//! After every applied move the like-mindedness `L` of the current assignment
//! is updated in `O(|from| + |to|)`, and every node pair with `sim ≥ L`
//! (and `sim > 0`) that is not yet an edge is added to the working copy. Pairs
//! are consumed from a list sorted by descending similarity, so each pair is
//! looked at once per run.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::SimMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modularity::{ModularityVariant, PartitionStats};
use crate::partition::Partition;
use crate::quality::like_mindedness;
use crate::structural::louvain::{best_move, MoveScratch, WorkingGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedLouvainOutcome {
    pub partition: Partition,
    /// Injected pairs `(u, v)`, `u < v`, in injection order. Never edges of the input.
    pub injected: Vec<(usize, usize)>,
    /// Cumulative injected-edge count after each sweep.
    pub injection_trace: Vec<usize>,
    pub moves: usize,
    /// Modularity on the input graph.
    pub modularity: f64,
    /// Modularity on the augmented working graph.
    pub modularity_working: f64,
    pub like_mindedness: f64,
}

/// Node pairs with positive similarity, by descending similarity then `(u, v)`.
fn sorted_pairs(s: &SimMatrix) -> Vec<(f64, u32, u32)> {
    let n = s.size();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let sim = s.get(u, v);
            if sim > 0.0 {
                pairs.push((sim, u as u32, v as u32));
            }
        }
    }
    pairs.sort_unstable_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    pairs
}

/// Members of each community id with O(1) removal.
struct Membership {
    members: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl Membership {
    fn singletons(n: usize) -> Self {
        Membership { members: (0..n).map(|v| vec![v]).collect(), position: vec![0; n] }
    }

    fn relocate(&mut self, node: usize, from: usize, to: usize) {
        let pos = self.position[node];
        self.members[from].swap_remove(pos);
        if let Some(&moved) = self.members[from].get(pos) {
            self.position[moved] = pos;
        }
        self.position[node] = self.members[to].len();
        self.members[to].push(node);
    }
}

struct Injector<'a> {
    graph: &'a Graph,
    pairs: Vec<(f64, u32, u32)>,
    cursor: usize,
    injected: Vec<(usize, usize)>,
}

impl Injector<'_> {
    fn inject(&mut self, threshold: f64, working: &mut WorkingGraph, stats: &mut PartitionStats) {
        while let Some(&(sim, u, v)) = self.pairs.get(self.cursor) {
            if sim < threshold {
                break;
            }
            self.cursor += 1;
            let (u, v) = (u as usize, v as usize);
            if !self.graph.has_edge(u, v) {
                working.add_edge(u, v);
                stats.add_edge(u, v);
                self.injected.push((u, v));
                #[cfg(test)]
                assert_eq!(*stats, PartitionStats::new(&*working, stats.assignment(), stats.capacity()));
            }
        }
    }
}

pub fn modified_louvain(g: &Graph, s: &SimMatrix, variant: ModularityVariant) -> Result<ModifiedLouvainOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let n = g.node_count();
    if s.size() != n {
        return Err(Error::SizeMismatch { left: s.size(), right: n });
    }
    let mut working = WorkingGraph::from_graph(g);
    let identity: Vec<usize> = (0..n).collect();
    let mut stats = PartitionStats::new(&working, &identity, n);
    let mut membership = Membership::singletons(n);
    let mut injector = Injector { graph: g, pairs: sorted_pairs(s), cursor: 0, injected: Vec::new() };
    let mut scratch = MoveScratch::new(n);
    let (mut intra_sum, mut intra_pairs) = (0.0f64, 0u64);
    let mut injection_trace = Vec::new();
    let mut moves = 0;

    loop {
        let mut moved = false;
        for node in 0..n {
            let Some((to, links)) = best_move(&working, &stats, node, variant, &mut scratch) else {
                continue;
            };
            let from = stats.assignment()[node];
            for &y in &membership.members[from] {
                if y != node {
                    intra_sum -= s.get(node, y);
                }
            }
            intra_pairs -= membership.members[from].len() as u64 - 1;
            for &y in &membership.members[to] {
                intra_sum += s.get(node, y);
            }
            intra_pairs += membership.members[to].len() as u64;
            stats.apply_move(&working, node, to, links);
            membership.relocate(node, from, to);
            moves += 1;
            moved = true;

            let current = if intra_pairs == 0 { 0.0 } else { intra_sum / intra_pairs as f64 };
            injector.inject(current, &mut working, &mut stats);
        }
        injection_trace.push(injector.injected.len());
        if !moved {
            break;
        }
    }

    let partition = Partition::from_assignment(stats.assignment());
    let modularity = crate::modularity::modularity(g, &partition, variant)?;
    let modularity_working = stats.modularity(variant);
    let like_mindedness = like_mindedness(s, &partition)?;
    Ok(ModifiedLouvainOutcome {
        partition,
        injected: injector.injected,
        injection_trace,
        moves,
        modularity,
        modularity_working,
        like_mindedness,
    })
}
