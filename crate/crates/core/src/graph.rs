//! Immutable simple undirected graph with dense node indices.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Bidirectional dictionary between external node labels and dense indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Labels {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `"0"`, `"1"`, ... for graphs built from raw indices.
    pub fn numeric(n: usize) -> Self {
        let mut labels = Self::new();
        for i in 0..n {
            labels.intern(&i.to_string());
        }
        labels
    }

    /// Returns the index of `label`, assigning the next free index on first sight.
    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.names.len();
        self.names.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Undirected, unweighted simple graph in compressed adjacency form.
///
/// Every edge has an id; ids follow the lexicographic order of `(min, max)`
/// endpoint pairs, so "smallest id" and "lexicographically smallest edge"
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Labels,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    slot_edge: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes labelled by their index.
    ///
    /// Duplicate and reversed pairs collapse into one edge; self-loops are dropped.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_labels(Labels::numeric(node_count), edges)
    }

    /// Builds a graph whose node `i` carries `labels.name(i)`.
    pub fn with_labels<I>(labels: Labels, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, node_count: n });
                }
            }
            if u != v {
                pairs.push(if u < v { (u, v) } else { (v, u) });
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(labels, pairs))
    }

    /// Builds a graph from label pairs.
    ///
    /// With `declared` set, the node universe is exactly those labels in that
    /// order and any other label is an error. Without it, nodes are numbered in
    /// order of first appearance.
    pub fn from_labeled_edges<'a, I>(declared: Option<&[String]>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut labels = Labels::new();
        let mut pairs = Vec::new();
        match declared {
            Some(names) => {
                for name in names {
                    labels.intern(name);
                }
                for (a, b) in edges {
                    let u = labels.get(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
                    let v = labels.get(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
                    pairs.push((u, v));
                }
            }
            None => {
                for (a, b) in edges {
                    let u = labels.intern(a);
                    let v = labels.intern(b);
                    pairs.push((u, v));
                }
            }
        }
        Self::with_labels(labels, pairs)
    }

    fn from_sorted_pairs(labels: Labels, pairs: Vec<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut neighbors = vec![0; total];
        let mut slot_edge = vec![0; total];
        let mut fill = offsets[..n].to_vec();
        // Pairs are sorted, so for a node x the lower neighbors (x as `v`)
        // arrive before the higher ones and every run comes out sorted.
        for (id, &(u, v)) in pairs.iter().enumerate() {
            neighbors[fill[u]] = v;
            slot_edge[fill[u]] = id;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            slot_edge[fill[v]] = id;
            fill[v] += 1;
        }
        debug_assert!((0..n).all(|x| neighbors[offsets[x]..offsets[x + 1]].windows(2).all(|w| w[0] < w[1])));
        Graph { labels, offsets, neighbors, slot_edge, edges: pairs }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor indices of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.slot_edge[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edge list as `(min, max)` pairs in lexicographic (= id) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&(a, b)).ok()
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        self.labels.name(v)
    }

    /// Connected components, numbered by their smallest node.
    pub fn connected_components(&self) -> Partition {
        let n = self.node_count();
        let mut assignment = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let mut next = 0;
        for start in 0..n {
            if assignment[start] != usize::MAX {
                continue;
            }
            assignment[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if assignment[w] == usize::MAX {
                        assignment[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        Partition::from_assignment(&assignment)
    }

    /// Subgraph induced by `keep`, with nodes renumbered in ascending original
    /// order and original labels preserved.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.iter().find(|&&v| v >= n) {
            return Err(Error::NodeOutOfRange { node: bad, node_count: n });
        }
        let mut remap = vec![usize::MAX; n];
        let mut labels = Labels::new();
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
            labels.intern(self.label(old));
        }
        let mut pairs = Vec::new();
        for &(u, v) in &self.edges {
            if remap[u] != usize::MAX && remap[v] != usize::MAX {
                pairs.push((remap[u], remap[v]));
            }
        }
        Graph::with_labels(labels, pairs)
    }
}
