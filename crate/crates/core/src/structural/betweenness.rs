//! Exact edge betweenness by shortest-path counting with dependency
//! accumulation from every source.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Betweenness of every edge, indexed by edge id.
///
/// Each unordered node pair contributes once; a pair joined by `k` shortest
/// paths adds `1/k` to every edge of each path.
#[derive(Debug, Clone, PartialEq)]
pub struct BetweennessTable {
    edges: Vec<(usize, usize)>,
    scores: Vec<f64>,
}

impl BetweennessTable {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn get(&self, u: usize, v: usize) -> Option<f64> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok().map(|i| self.scores[i])
    }

    /// Highest-scoring edge; ties go to the smallest edge id.
    pub fn max_edge(&self) -> Option<(usize, f64)> {
        max_with_ties(self.scores.iter().copied().enumerate())
    }
}

/// Scores within this relative distance of the maximum count as tied, since
/// path counts summed in different orders can differ in the last bits.
const TIE_TOLERANCE: f64 = 1e-9;

/// First item whose score ties the maximum.
pub(crate) fn max_with_ties(scores: impl Iterator<Item = (usize, f64)> + Clone) -> Option<(usize, f64)> {
    let max = scores.clone().map(|(_, s)| s).fold(f64::NEG_INFINITY, f64::max);
    let slack = TIE_TOLERANCE * max.abs().max(1.0);
    scores.into_iter().find(|&(_, s)| s >= max - slack)
}

/// Reusable buffers for single-source accumulation.
pub(crate) struct Brandes {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    preds: Vec<Vec<(usize, usize)>>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Brandes {
    pub(crate) fn new(n: usize) -> Self {
        Brandes {
            sigma: vec![0.0; n],
            dist: vec![usize::MAX; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    /// Adds `weight ×` the dependency of `source` on each edge into `scores`.
    ///
    /// `adj[v]` lists `(neighbor, edge id)`.
    pub(crate) fn accumulate(&mut self, adj: &[Vec<(usize, usize)>], source: usize, weight: f64, scores: &mut [f64]) {
        for &v in &self.order {
            self.sigma[v] = 0.0;
            self.dist[v] = usize::MAX;
            self.delta[v] = 0.0;
            self.preds[v].clear();
        }
        self.order.clear();
        self.sigma[source] = 1.0;
        self.dist[source] = 0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            for &(w, e) in &adj[v] {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push((v, e));
                }
            }
        }
        for i in (0..self.order.len()).rev() {
            let w = self.order[i];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for j in 0..self.preds[w].len() {
                let (v, e) = self.preds[w][j];
                let c = self.sigma[v] * coeff;
                scores[e] += weight * c;
                self.delta[v] += c;
            }
        }
    }
}

pub(crate) fn adjacency_with_ids(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    (0..g.node_count())
        .map(|v| g.neighbors(v).iter().copied().zip(g.incident_edges(v).iter().copied()).collect())
        .collect()
}

pub fn edge_betweenness(g: &Graph) -> BetweennessTable {
    let adj = adjacency_with_ids(g);
    let mut scores = vec![0.0; g.edge_count()];
    let mut brandes = Brandes::new(g.node_count());
    // Every unordered pair is reached from both ends.
    for source in 0..g.node_count() {
        brandes.accumulate(&adj, source, 0.5, &mut scores);
    }
    BetweennessTable { edges: g.edges().to_vec(), scores }
}
