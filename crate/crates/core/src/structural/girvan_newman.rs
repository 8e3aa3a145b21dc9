//! Divisive clustering by repeated removal of the highest-betweenness edge.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::hier::{Dendrogram, Merge};
use crate::structural::betweenness::{adjacency_with_ids, max_with_ties, Brandes};

/// One edge removal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Removal {
    pub edge: (usize, usize),
    pub betweenness: f64,
    /// Component count right after the removal.
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GirvanNewman {
    /// Splits replayed bottom-up; cuts exist from the initial component count to |V|.
    pub dendrogram: Dendrogram,
    pub removals: Vec<Removal>,
}

fn component_of(adj: &[Vec<(usize, usize)>], start: usize, mark: &mut [bool], out: &mut Vec<usize>) {
    out.clear();
    let mut queue = VecDeque::new();
    mark[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for &(w, _) in &adj[u] {
            if !mark[w] {
                mark[w] = true;
                queue.push_back(w);
            }
        }
    }
    for &v in out.iter() {
        mark[v] = false;
    }
}

/// Removes edges until none remain, recomputing betweenness only inside the
/// component(s) touched by each removal. Ties go to the smallest edge.
pub fn girvan_newman(g: &Graph) -> GirvanNewman {
    let n = g.node_count();
    let mut adj = adjacency_with_ids(g);
    let mut alive = vec![true; g.edge_count()];
    let mut scores = vec![0.0; g.edge_count()];
    let mut brandes = Brandes::new(n);
    for source in 0..n {
        brandes.accumulate(&adj, source, 0.5, &mut scores);
    }

    let mut components = g.connected_components().community_count();
    let mut removals = Vec::with_capacity(g.edge_count());
    let mut splits = Vec::new();
    let mut mark = vec![false; n];
    let (mut side_u, mut side_v) = (Vec::new(), Vec::new());

    loop {
        let live = scores.iter().copied().enumerate().filter(|&(e, _)| alive[e]);
        let Some((e, betweenness)) = max_with_ties(live) else { break };
        let (u, v) = g.edges()[e];
        alive[e] = false;
        adj[u].retain(|&(_, id)| id != e);
        adj[v].retain(|&(_, id)| id != e);

        component_of(&adj, u, &mut mark, &mut side_u);
        let split = !side_u.contains(&v);
        if split {
            component_of(&adj, v, &mut mark, &mut side_v);
            components += 1;
            let (mu, mv) = (side_u.iter().min().copied().unwrap(), side_v.iter().min().copied().unwrap());
            splits.push(Merge { a: mu.min(mv), b: mu.max(mv), merged: mu.min(mv), score: betweenness });
        } else {
            side_v.clear();
        }
        removals.push(Removal { edge: (u, v), betweenness, components });

        for &x in side_u.iter().chain(side_v.iter()) {
            for &(_, id) in &adj[x] {
                scores[id] = 0.0;
            }
        }
        for &x in side_u.iter().chain(side_v.iter()) {
            brandes.accumulate(&adj, x, 0.5, &mut scores);
        }
    }

    splits.reverse();
    GirvanNewman { dendrogram: Dendrogram::from_trusted(n, splits), removals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    #[test]
    fn bridge_goes_first() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let gn = girvan_newman(&g);
        assert_eq!(gn.removals[0].edge, (2, 3));
        assert_eq!(gn.removals[0].betweenness, 9.0);
        assert_eq!(gn.removals[0].components, 2);
        assert_eq!(gn.dendrogram.cut(2).unwrap(), Partition::from_assignment(&[0, 0, 0, 1, 1, 1]));
        assert_eq!(gn.dendrogram.merges().len(), 5);
        assert_eq!(gn.removals.last().unwrap().components, 6);
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::from_edges(3, []).unwrap();
        let gn = girvan_newman(&g);
        assert!(gn.removals.is_empty());
        assert_eq!(gn.dendrogram.min_k(), 3);
        assert_eq!(gn.dendrogram.cut(3).unwrap(), Partition::singletons(3));
    }

    #[test]
    fn disconnected_input_starts_from_components() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let gn = girvan_newman(&g);
        assert_eq!(gn.dendrogram.min_k(), 2);
        assert_eq!(gn.dendrogram.cut(2).unwrap(), g.connected_components());
        let counts: Vec<usize> = gn.removals.iter().map(|r| r.components).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }
}
