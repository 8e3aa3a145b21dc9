//! Slow reference implementations written straight from the definitions.
//! They share no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;

/// Every set partition of `0..n` as a restricted-growth assignment.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

/// Modularity from fractions: `a_i` = internal edges / m; Newman uses the
/// endpoint fraction `d_i / 2m`, the literal form the incident-edge fraction.
pub fn modularity(edges: &[(usize, usize)], assignment: &[usize], literal: bool) -> f64 {
    let m = edges.len() as f64;
    let k = assignment.iter().copied().max().map_or(0, |c| c + 1);
    let mut q = 0.0;
    for c in 0..k {
        let internal = edges.iter().filter(|&&(u, v)| assignment[u] == c && assignment[v] == c).count() as f64;
        let a = internal / m;
        let b = if literal {
            edges.iter().filter(|&&(u, v)| assignment[u] == c || assignment[v] == c).count() as f64 / m
        } else {
            let endpoints: usize =
                edges.iter().map(|&(u, v)| (assignment[u] == c) as usize + (assignment[v] == c) as usize).sum();
            endpoints as f64 / (2.0 * m)
        };
        q += a - b * b;
    }
    q
}

/// Unordered edge list of a G(n, p) graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn distances(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut frontier = vec![s];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in &adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Edge betweenness by listing every shortest path of every pair; a pair
/// with `k` shortest paths gives `1/k` to each edge on each of them.
/// Scores follow the order of `edges`.
pub fn betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let adj = adjacency(n, edges);
    let index = |a: usize, b: usize| {
        edges.iter().position(|&(u, v)| (u, v) == (a.min(b), a.max(b))).expect("edge exists")
    };
    let mut scores = vec![0.0; edges.len()];
    for s in 0..n {
        let dist_s = distances(&adj, s);
        for t in s + 1..n {
            let Some(len) = dist_s[t] else { continue };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if path.len() - 1 == len {
                    if last == t {
                        paths.push(path);
                    }
                    continue;
                }
                for &w in &adj[last] {
                    if !path.contains(&w) {
                        let mut p = path.clone();
                        p.push(w);
                        stack.push(p);
                    }
                }
            }
            let share = 1.0 / paths.len() as f64;
            for p in &paths {
                for w in p.windows(2) {
                    scores[index(w[0], w[1])] += share;
                }
            }
        }
    }
    scores
}

/// Reachability labels: `label[v]` = smallest node reachable from `v`.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let adj = adjacency(n, edges);
    (0..n)
        .map(|v| {
            let dist = distances(&adj, v);
            (0..n).find(|&u| dist[u].is_some()).unwrap()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Single,
    Average,
    Complete,
    LikeMindedness,
}

/// Agglomeration by rescanning every cluster pair at each step. Clusters are
/// named by their smallest node; among equal best scores the first pair in
/// `(a, b)` order wins. Returns `(a, b, score)` per merge.
pub fn agglomerate(n: usize, sim: impl Fn(usize, usize) -> f64, rule: Rule) -> Vec<(usize, usize, f64)> {
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut merges = Vec::new();
    while clusters.len() > 1 {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let (a, b) = (&clusters[i], &clusters[j]);
                let cross: Vec<f64> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| sim(x, y)).collect();
                let (sa, sb) = (a.len() as f64, b.len() as f64);
                let score = match rule {
                    Rule::Single => cross.iter().copied().fold(f64::INFINITY, f64::min),
                    Rule::Complete => cross.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    Rule::Average => cross.iter().sum::<f64>() / (sa * sb),
                    Rule::LikeMindedness => 1.0 / sa.max(sb) + cross.iter().sum::<f64>() / (sa * sb),
                };
                if best.is_none_or(|(_, _, s)| score > s) {
                    best = Some((i, j, score));
                }
            }
        }
        let (i, j, score) = best.unwrap();
        let absorbed = clusters.remove(j);
        merges.push((clusters[i][0], absorbed[0], score));
        clusters[i].extend(absorbed);
        clusters[i].sort_unstable();
        clusters.sort_by_key(|c| c[0]);
    }
    merges
}

/// Mean intra-community similarity over pairs `u < v`; 0 without pairs.
pub fn like_mindedness(n: usize, sim: impl Fn(usize, usize) -> f64, assignment: &[usize]) -> f64 {
    let (mut sum, mut count) = (0.0, 0usize);
    for u in 0..n {
        for v in u + 1..n {
            if assignment[u] == assignment[v] {
                sum += sim(u, v);
                count += 1;
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Similarities that are multiples of 1/256, so sums of them are exact.
pub fn dyadic_sims<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(0..=256) as f64 / 256.0).collect()
}
