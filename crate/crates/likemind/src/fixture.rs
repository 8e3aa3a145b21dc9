//! Seeded synthetic datasets with planted communities.
//!
//! The same seed always produces the same tables, graph and vectors.

use likemind_core::pipeline::{FollowTable, RatingsTable};
use likemind_core::{BehavioralMatrix, Graph, SimMatrix, SparseVector, VectorKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn user(i: usize) -> String {
    format!("u{i:05}")
}

/// Social graph with mutual follows planted inside communities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SocialParams {
    pub users: usize,
    pub communities: usize,
    /// Probability of a mutual follow inside a community.
    pub p_in: f64,
    /// Probability of a mutual follow across communities.
    pub p_out: f64,
    /// Probability of an extra one-way follow between any two users.
    pub p_one_way: f64,
}

fn plant_follows(r: &mut ChaCha8Rng, p: &SocialParams, follows: &mut FollowTable) {
    for a in 0..p.users {
        for b in a + 1..p.users {
            let same = a % p.communities == b % p.communities;
            if r.gen_bool(if same { p.p_in } else { p.p_out }) {
                follows.insert(&user(a), &user(b));
                follows.insert(&user(b), &user(a));
            } else if r.gen_bool(p.p_one_way) {
                let (x, y) = if r.gen_bool(0.5) { (a, b) } else { (b, a) };
                follows.insert(&user(x), &user(y));
            }
        }
    }
}

/// Ratings dataset: each community favors its own block of items, and a few
/// blockbuster items are rated by almost everyone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatingsParams {
    pub social: SocialParams,
    pub items_per_community: usize,
    pub ratings_per_user: usize,
    /// Share of a user's ratings that fall in the community's block.
    pub affinity: f64,
    pub blockbusters: usize,
}

impl Default for RatingsParams {
    fn default() -> Self {
        RatingsParams {
            social: SocialParams { users: 120, communities: 4, p_in: 0.2, p_out: 0.01, p_one_way: 0.02 },
            items_per_community: 30,
            ratings_per_user: 12,
            affinity: 0.8,
            blockbusters: 3,
        }
    }
}

pub fn ratings_dataset(seed: u64, p: &RatingsParams) -> (RatingsTable, FollowTable) {
    let mut r = rng(seed);
    let mut follows = FollowTable::new();
    plant_follows(&mut r, &p.social, &mut follows);

    let k = p.social.communities;
    let item = |c: usize, j: usize| format!("m{c:02}_{j:03}");
    let mut ratings = RatingsTable::new();
    for u in 0..p.social.users {
        let c = u % k;
        for _ in 0..p.ratings_per_user {
            let (block, liked) = if r.gen_bool(p.affinity) { (c, true) } else { (r.gen_range(0..k), false) };
            let j = r.gen_range(0..p.items_per_community);
            let rating = if liked { r.gen_range(4..=5) } else { r.gen_range(1..=3) };
            ratings.insert(&user(u), &item(block, j), rating).expect("ratings in range");
        }
        for b in 0..p.blockbusters {
            if r.gen_bool(0.9) {
                ratings.insert(&user(u), &format!("blockbuster{b}"), r.gen_range(3..=5)).expect("ratings in range");
            }
        }
    }
    (ratings, follows)
}

/// Follow dataset: a handful of celebrities followed by many users, with each
/// community following its own subset of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FollowsParams {
    pub social: SocialParams,
    pub celebrities: usize,
    /// Probability of following a celebrity of one's own community.
    pub p_fan: f64,
    /// Probability of following any other celebrity.
    pub p_casual: f64,
}

impl Default for FollowsParams {
    fn default() -> Self {
        FollowsParams {
            social: SocialParams { users: 150, communities: 3, p_in: 0.15, p_out: 0.01, p_one_way: 0.02 },
            celebrities: 12,
            p_fan: 0.6,
            p_casual: 0.08,
        }
    }
}

pub fn follows_dataset(seed: u64, p: &FollowsParams) -> FollowTable {
    let mut r = rng(seed);
    let mut follows = FollowTable::new();
    plant_follows(&mut r, &p.social, &mut follows);
    for u in 0..p.social.users {
        for c in 0..p.celebrities {
            let fan = c % p.social.communities == u % p.social.communities;
            if r.gen_bool(if fan { p.p_fan } else { p.p_casual }) {
                follows.insert(&user(u), &format!("celeb{c:03}"));
            }
        }
    }
    follows
}

/// Planted structural communities plus behavioral groups that agree with
/// them except on a random share of nodes, which behave like members of the
/// next community over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrosscutParams {
    pub nodes: usize,
    pub groups: usize,
    /// Share of nodes whose behavioral group differs from their community.
    pub mismatch: f64,
    pub p_in: f64,
    pub p_out: f64,
    /// Similarity ranges inside and across behavioral groups.
    pub sim_in: (f64, f64),
    pub sim_out: (f64, f64),
}

impl Default for CrosscutParams {
    fn default() -> Self {
        CrosscutParams {
            nodes: 60,
            groups: 3,
            mismatch: 0.1,
            p_in: 0.3,
            p_out: 0.03,
            sim_in: (0.5, 0.9),
            sim_out: (0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscutInstance {
    pub graph: Graph,
    pub sims: SimMatrix,
    pub structural: Vec<usize>,
    pub behavioral: Vec<usize>,
}

pub fn crosscut_instance(seed: u64, p: &CrosscutParams) -> CrosscutInstance {
    let mut r = rng(seed);
    let structural: Vec<usize> = (0..p.nodes).map(|v| v % p.groups).collect();
    let behavioral: Vec<usize> = structural
        .iter()
        .map(|&c| if r.gen_bool(p.mismatch) { (c + 1) % p.groups } else { c })
        .collect();
    let mut edges = Vec::new();
    for u in 0..p.nodes {
        for v in u + 1..p.nodes {
            if r.gen_bool(if structural[u] == structural[v] { p.p_in } else { p.p_out }) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(p.nodes, edges).expect("nodes > 0");
    let sims = SimMatrix::from_fn(p.nodes, |u, v| {
        let (lo, hi) = if behavioral[u] == behavioral[v] { p.sim_in } else { p.sim_out };
        r.gen_range(lo..=hi)
    })
    .expect("similarities are finite");
    CrosscutInstance { graph, sims, structural, behavioral }
}

/// Sparse random graph with the given average degree, as used for timing runs.
pub fn random_graph(seed: u64, nodes: usize, avg_degree: f64) -> Graph {
    let mut r = rng(seed);
    let target = (avg_degree * nodes as f64 / 2.0).round() as usize;
    let mut edges = Vec::with_capacity(target);
    while edges.len() < target {
        let (u, v) = (r.gen_range(0..nodes), r.gen_range(0..nodes));
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(nodes, edges).expect("nodes > 0")
}

/// Random 0/1 interest vectors with about `density × dimension` ones each.
pub fn random_binary_vectors(seed: u64, nodes: usize, dimension: usize, density: f64) -> BehavioralMatrix {
    let mut r = rng(seed);
    let indices: Vec<u32> = (0..dimension as u32).collect();
    let ones = ((density * dimension as f64).round() as usize).clamp(1, dimension.max(1));
    let vectors = (0..nodes)
        .map(|_| SparseVector::from_entries(indices.choose_multiple(&mut r, ones).map(|&i| (i, 1.0)).collect()))
        .collect();
    BehavioralMatrix::new(VectorKind::Interest, dimension, vectors).expect("entries are 0/1 within dimension")
}
