//! Dataset filtering and behavioral-vector construction.
//!
//! Ratings datasets: items rated at least `movie_max_popularity` times are
//! dropped first, then users are kept if they are active (at least
//! `min_ratings` remaining ratings) and social (at least `min_friends` mutual
//! friends). Follow datasets: users with more than `celeb_threshold` followers
//! are celebrities; non-celebrities with at least `min_noncelebrity_friends`
//! non-celebrity friends are kept.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::behavior::{BehavioralMatrix, SparseVector, VectorKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Labels};

/// Ratings keyed by `(user, item)`; re-rating an item replaces the old value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RatingsTable {
    ratings: BTreeMap<(String, String), u8>,
    item_counts: BTreeMap<String, usize>,
    user_counts: BTreeMap<String, usize>,
}

impl RatingsTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, user: &str, item: &str, rating: u8) -> Result<()> {
        if !(1..=5).contains(&rating) {
            return Err(Error::InvalidRating { user: user.to_string(), item: item.to_string(), rating });
        }
        let key = (user.to_string(), item.to_string());
        if self.ratings.insert(key, rating).is_none() {
            *self.item_counts.entry(item.to_string()).or_insert(0) += 1;
            *self.user_counts.entry(user.to_string()).or_insert(0) += 1;
        }
        Ok(())
    }

    pub fn from_records<'a, I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, u8)>,
    {
        let mut table = Self::new();
        for (user, item, rating) in records {
            table.insert(user, item, rating)?;
        }
        Ok(table)
    }

    /// `(user, item, rating)` sorted by user, then item.
    pub fn records(&self) -> impl Iterator<Item = (&str, &str, u8)> {
        self.ratings.iter().map(|((u, i), &r)| (u.as_str(), i.as_str(), r))
    }

    pub fn len(&self) -> usize {
        self.ratings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratings.is_empty()
    }

    pub fn rating(&self, user: &str, item: &str) -> Option<u8> {
        self.ratings.get(&(user.to_string(), item.to_string())).copied()
    }

    pub fn item_count(&self, item: &str) -> usize {
        self.item_counts.get(item).copied().unwrap_or(0)
    }

    pub fn user_count(&self, user: &str) -> usize {
        self.user_counts.get(user).copied().unwrap_or(0)
    }

    /// Rated items in lexicographic order.
    pub fn items(&self) -> impl Iterator<Item = &str> {
        self.item_counts.keys().map(String::as_str)
    }

    pub fn users(&self) -> impl Iterator<Item = &str> {
        self.user_counts.keys().map(String::as_str)
    }

    fn user_ratings<'a>(&'a self, user: &'a str) -> impl Iterator<Item = (&'a str, u8)> + 'a {
        self.ratings
            .range((user.to_string(), String::new())..)
            .take_while(move |((u, _), _)| u == user)
            .map(|((_, i), &r)| (i.as_str(), r))
    }
}

/// Directed follow relation without self-follows or duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FollowTable {
    follows: BTreeSet<(String, String)>,
    follower_counts: BTreeMap<String, usize>,
    users: BTreeSet<String>,
}

impl FollowTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` (and records nothing) for self-follows and repeats.
    pub fn insert(&mut self, follower: &str, followee: &str) -> bool {
        if follower == followee {
            return false;
        }
        if !self.follows.insert((follower.to_string(), followee.to_string())) {
            return false;
        }
        *self.follower_counts.entry(followee.to_string()).or_insert(0) += 1;
        self.users.insert(follower.to_string());
        self.users.insert(followee.to_string());
        true
    }

    pub fn from_records<'a, I>(records: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut table = Self::new();
        for (a, b) in records {
            table.insert(a, b);
        }
        table
    }

    pub fn follows(&self, follower: &str, followee: &str) -> bool {
        self.follows.contains(&(follower.to_string(), followee.to_string()))
    }

    /// `(follower, followee)` pairs in lexicographic order.
    pub fn records(&self) -> impl Iterator<Item = (&str, &str)> {
        self.follows.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.follows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.follows.is_empty()
    }

    pub fn follower_count(&self, user: &str) -> usize {
        self.follower_counts.get(user).copied().unwrap_or(0)
    }

    /// Every user seen on either side, sorted.
    pub fn users(&self) -> impl Iterator<Item = &str> {
        self.users.iter().map(String::as_str)
    }

    fn followees<'a>(&'a self, user: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.follows
            .range((user.to_string(), String::new())..)
            .take_while(move |(a, _)| a == user)
            .map(|(_, b)| b.as_str())
    }
}

/// Friendship graph over all users of `f` (sorted labels): `u–v` iff each
/// follows the other. An empty table has no users and yields `EmptyGraph`.
pub fn mutual_friend_graph(f: &FollowTable) -> Result<Graph> {
    let mut labels = Labels::new();
    for u in f.users() {
        labels.intern(u);
    }
    let mut edges = Vec::new();
    for (a, b) in f.records() {
        if a < b && f.follows(b, a) {
            edges.push((labels.get(a).unwrap(), labels.get(b).unwrap()));
        }
    }
    Graph::with_labels(labels, edges)
}

/// Ratings left after the popularity filter. Only this type feeds
/// [`user_filter`], which pins the filter order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovieFiltered(RatingsTable);

impl MovieFiltered {
    pub fn table(&self) -> &RatingsTable {
        &self.0
    }

    pub fn into_table(self) -> RatingsTable {
        self.0
    }
}

/// Drops every item rated `max_popularity` times or more.
pub fn movie_filter(r: &RatingsTable, max_popularity: usize) -> Result<MovieFiltered> {
    if max_popularity == 0 {
        return Err(Error::InvalidThreshold("movie_max_popularity"));
    }
    let mut kept = RatingsTable::new();
    for (user, item, rating) in r.records() {
        if r.item_count(item) < max_popularity {
            kept.insert(user, item, rating)?;
        }
    }
    Ok(MovieFiltered(kept))
}

/// Nodes of `g` whose label has at least `min_ratings` remaining ratings and
/// degree at least `min_friends`.
pub fn user_filter(r: &MovieFiltered, g: &Graph, min_ratings: usize, min_friends: usize) -> Vec<usize> {
    (0..g.node_count())
        .filter(|&v| r.0.user_count(g.label(v)) >= min_ratings && g.degree(v) >= min_friends)
        .collect()
}

/// Splits users into celebrities (more than `celeb_threshold` followers) and
/// the non-celebrities with at least `min_noncelebrity_friends` mutual friends
/// among non-celebrities.
pub fn celebrity_split(
    f: &FollowTable,
    celeb_threshold: usize,
    min_noncelebrity_friends: usize,
) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    if celeb_threshold == 0 {
        return Err(Error::InvalidThreshold("celeb_threshold"));
    }
    if min_noncelebrity_friends == 0 {
        return Err(Error::InvalidThreshold("min_noncelebrity_friends"));
    }
    let celebrities: BTreeSet<String> =
        f.users().filter(|u| f.follower_count(u) > celeb_threshold).map(ToString::to_string).collect();
    let mut friends: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b) in f.records() {
        if a < b && f.follows(b, a) && !celebrities.contains(a) && !celebrities.contains(b) {
            *friends.entry(a).or_insert(0) += 1;
            *friends.entry(b).or_insert(0) += 1;
        }
    }
    let kept = friends
        .into_iter()
        .filter(|&(_, count)| count >= min_noncelebrity_friends)
        .map(|(u, _)| u.to_string())
        .collect();
    Ok((celebrities, kept))
}

/// Stable dense index over item (or celebrity) labels, in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemIndex {
    labels: Labels,
}

impl ItemIndex {
    pub fn from_labels<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Self {
        let mut sorted: Vec<&str> = items.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let mut labels = Labels::new();
        for item in sorted {
            labels.intern(item);
        }
        ItemIndex { labels }
    }

    pub fn from_ratings(r: &RatingsTable) -> Self {
        Self::from_labels(r.items())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, item: &str) -> Option<usize> {
        self.labels.get(item)
    }

    pub fn items(&self) -> &[String] {
        self.labels.names()
    }
}

/// A behavioral matrix plus the users (by position) that had no data at all.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorBuild {
    pub matrix: BehavioralMatrix,
    pub missing_users: Vec<usize>,
}

fn rating_like(r: &RatingsTable, index: &ItemIndex, users: &[String], kind: VectorKind) -> Result<VectorBuild> {
    let mut vectors = Vec::with_capacity(users.len());
    let mut missing_users = Vec::new();
    for (pos, user) in users.iter().enumerate() {
        if r.user_count(user) == 0 {
            missing_users.push(pos);
        }
        let entries = r
            .user_ratings(user)
            .filter_map(|(item, rating)| {
                let value = match kind {
                    VectorKind::Rating => rating as f64,
                    _ => 1.0,
                };
                index.position(item).map(|i| (i as u32, value))
            })
            .collect();
        vectors.push(SparseVector::from_entries(entries));
    }
    Ok(VectorBuild { matrix: BehavioralMatrix::new(kind, index.len(), vectors)?, missing_users })
}

/// Rating vectors: the user's rating of each indexed item, 0 if unrated.
pub fn build_rating_vectors(r: &RatingsTable, index: &ItemIndex, users: &[String]) -> Result<VectorBuild> {
    rating_like(r, index, users, VectorKind::Rating)
}

/// Interest vectors: 1 for each indexed item the user rated.
pub fn build_interest_vectors(r: &RatingsTable, index: &ItemIndex, users: &[String]) -> Result<VectorBuild> {
    rating_like(r, index, users, VectorKind::Interest)
}

/// Celebrity vectors: 1 for each indexed celebrity the user follows.
pub fn build_celebrity_vectors(f: &FollowTable, celebrities: &ItemIndex, users: &[String]) -> Result<VectorBuild> {
    let mut vectors = Vec::with_capacity(users.len());
    let mut missing_users = Vec::new();
    for (pos, user) in users.iter().enumerate() {
        let entries: Vec<(u32, f64)> =
            f.followees(user).filter_map(|c| celebrities.position(c)).map(|i| (i as u32, 1.0)).collect();
        if !f.users.contains(user) {
            missing_users.push(pos);
        }
        vectors.push(SparseVector::from_entries(entries));
    }
    Ok(VectorBuild {
        matrix: BehavioralMatrix::new(VectorKind::Celebrity, celebrities.len(), vectors)?,
        missing_users,
    })
}

/// Thresholds of both filtering cascades.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterConfig {
    pub movie_max_popularity: usize,
    pub min_ratings: usize,
    pub min_friends: usize,
    pub celeb_threshold: usize,
    pub min_noncelebrity_friends: usize,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            movie_max_popularity: 50,
            min_ratings: 5,
            min_friends: 5,
            celeb_threshold: 10_000,
            min_noncelebrity_friends: 5_000,
        }
    }
}

impl FilterConfig {
    /// Sets a field by its configuration key. Returns `false` for unknown keys.
    pub fn set(&mut self, key: &str, value: usize) -> bool {
        let slot = match key {
            "movie_max_popularity" => &mut self.movie_max_popularity,
            "min_ratings" => &mut self.min_ratings,
            "min_friends" => &mut self.min_friends,
            "celeb_threshold" => &mut self.celeb_threshold,
            "min_noncelebrity_friends" => &mut self.min_noncelebrity_friends,
            _ => return false,
        };
        *slot = value;
        true
    }
}

/// Output of the ratings cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsDataset {
    /// Induced friendship graph of active, social users.
    pub graph: Graph,
    /// Ratings after the popularity filter, restricted to the kept users.
    pub ratings: RatingsTable,
    pub items: ItemIndex,
    pub rating_vectors: BehavioralMatrix,
    pub interest_vectors: BehavioralMatrix,
}

pub fn ratings_pipeline(ratings: &RatingsTable, follows: &FollowTable, config: &FilterConfig) -> Result<RatingsDataset> {
    let filtered = movie_filter(ratings, config.movie_max_popularity)?;
    let friends = mutual_friend_graph(follows)?;
    let keep = user_filter(&filtered, &friends, config.min_ratings, config.min_friends);
    if keep.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let graph = friends.induced_subgraph(&keep)?;
    let kept_users: BTreeSet<&str> = graph.labels().names().iter().map(String::as_str).collect();
    let mut restricted = RatingsTable::new();
    for (user, item, rating) in filtered.table().records() {
        if kept_users.contains(user) {
            restricted.insert(user, item, rating)?;
        }
    }
    let items = ItemIndex::from_ratings(filtered.table());
    let users = graph.labels().names();
    let rating_vectors = build_rating_vectors(&restricted, &items, users)?.matrix;
    let interest_vectors = build_interest_vectors(&restricted, &items, users)?.matrix;
    Ok(RatingsDataset { graph, ratings: restricted, items, rating_vectors, interest_vectors })
}

/// Output of the follow cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct FollowDataset {
    pub graph: Graph,
    pub celebrities: ItemIndex,
    pub celebrity_vectors: BehavioralMatrix,
}

pub fn follows_pipeline(follows: &FollowTable, config: &FilterConfig) -> Result<FollowDataset> {
    let (celebrities, kept) = celebrity_split(follows, config.celeb_threshold, config.min_noncelebrity_friends)?;
    if kept.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let friends = mutual_friend_graph(follows)?;
    let keep: Vec<usize> = kept.iter().map(|u| friends.labels().get(u).expect("kept users have friends")).collect();
    let graph = friends.induced_subgraph(&keep)?;
    let celebrities = ItemIndex::from_labels(celebrities.iter().map(String::as_str));
    let celebrity_vectors = build_celebrity_vectors(follows, &celebrities, graph.labels().names())?.matrix;
    Ok(FollowDataset { graph, celebrities, celebrity_vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn popular(item: &str, times: usize) -> Vec<(String, String, u8)> {
        (0..times).map(|i| (alloc::format!("u{i}"), item.to_string(), 3)).collect()
    }

    fn table(rows: &[(String, String, u8)]) -> RatingsTable {
        RatingsTable::from_records(rows.iter().map(|(u, i, r)| (u.as_str(), i.as_str(), *r))).unwrap()
    }

    #[test]
    fn last_write_wins() {
        let t = RatingsTable::from_records([("u1", "m1", 3), ("u1", "m1", 5)]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.rating("u1", "m1"), Some(5));
        assert_eq!((t.item_count("m1"), t.user_count("u1")), (1, 1));
    }

    #[test]
    fn ratings_out_of_range() {
        assert!(RatingsTable::from_records([("u1", "m1", 9)]).is_err());
        assert!(RatingsTable::from_records([("u1", "m1", 0)]).is_err());
    }

    #[test]
    fn movie_filter_boundary_is_inclusive() {
        let mut rows = popular("hit", 50);
        rows.extend(popular("niche", 49));
        let t = table(&rows);
        let kept = movie_filter(&t, 50).unwrap();
        assert_eq!(kept.table().item_count("hit"), 0);
        assert_eq!(kept.table().item_count("niche"), 49);
        assert!(movie_filter(&t, 1).unwrap().table().is_empty());
        assert!(movie_filter(&t, 0).is_err());
    }

    #[test]
    fn mutual_edges_only() {
        let g = mutual_friend_graph(&FollowTable::from_records([("a", "b"), ("b", "a")])).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = mutual_friend_graph(&FollowTable::from_records([("a", "b"), ("c", "a")])).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = mutual_friend_graph(&FollowTable::from_records([("a", "b"), ("b", "a"), ("b", "c")])).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.node_count(), 3);
    }

    #[test]
    fn self_follows_dropped() {
        let mut f = FollowTable::new();
        assert!(!f.insert("a", "a"));
        assert!(f.insert("a", "b"));
        assert!(!f.insert("a", "b"));
        assert_eq!(f.len(), 1);
    }

    fn star(center: &str, leaves: &[&str]) -> Vec<(String, String)> {
        leaves
            .iter()
            .flat_map(|l| [(center.to_string(), l.to_string()), (l.to_string(), center.to_string())])
            .collect()
    }

    #[test]
    fn user_filter_is_a_conjunction() {
        // "hub" has 5 friends, "tiny" has 4.
        let mut follows = star("hub", &["f1", "f2", "f3", "f4", "f5"]);
        follows.extend(star("tiny", &["f1", "f2", "f3", "f4"]));
        let f = FollowTable::from_records(follows.iter().map(|(a, b)| (a.as_str(), b.as_str())));
        let g = mutual_friend_graph(&f).unwrap();
        let mut rows = Vec::new();
        for user in ["hub", "tiny"] {
            for m in 0..5 {
                rows.push((user.to_string(), alloc::format!("m{m}"), 4));
            }
        }
        let r = movie_filter(&table(&rows), 50).unwrap();
        let kept: Vec<&str> = user_filter(&r, &g, 5, 5).into_iter().map(|v| g.label(v)).collect();
        assert_eq!(kept, ["hub"]);
        let empty = movie_filter(&RatingsTable::new(), 50).unwrap();
        assert!(user_filter(&empty, &g, 5, 5).is_empty());
    }

    #[test]
    fn celebrity_threshold_is_strict() {
        // c2 has 2 followers, c3 has 3; threshold 2.
        let f = FollowTable::from_records([
            ("a", "c2"),
            ("b", "c2"),
            ("a", "c3"),
            ("b", "c3"),
            ("d", "c3"),
            ("a", "b"),
            ("b", "a"),
            ("b", "d"),
            ("d", "b"),
            ("c3", "a"),
        ]);
        let (celebs, kept) = celebrity_split(&f, 2, 1).unwrap();
        assert_eq!(celebs.into_iter().collect::<Vec<_>>(), ["c3"]);
        // c3–a is mutual but c3 is a celebrity, so it does not count for a.
        assert_eq!(kept.into_iter().collect::<Vec<_>>(), ["a", "b", "d"]);
        let (_, kept) = celebrity_split(&f, 2, 2).unwrap();
        assert_eq!(kept.into_iter().collect::<Vec<_>>(), ["b"]);
    }

    #[test]
    fn vector_construction() {
        let r = RatingsTable::from_records([("u", "j", 4), ("w", "a", 2)]).unwrap();
        let index = ItemIndex::from_labels(["a", "b", "j"]);
        let users = ["u".to_string(), "ghost".to_string()];
        let rating = build_rating_vectors(&r, &index, &users).unwrap();
        let interest = build_interest_vectors(&r, &index, &users).unwrap();
        assert_eq!(rating.matrix.vector(0), &SparseVector::from_dense(&[0.0, 0.0, 4.0]));
        assert_eq!(interest.matrix.vector(0), &SparseVector::from_dense(&[0.0, 0.0, 1.0]));
        assert!(rating.matrix.vector(1).is_zero());
        assert_eq!(rating.missing_users, [1]);

        let f = FollowTable::from_records([("u", "celeb_0")]);
        let celebs = ItemIndex::from_labels(["celeb_0", "celeb_1"]);
        let v = build_celebrity_vectors(&f, &celebs, &["u".to_string()]).unwrap();
        assert_eq!(v.matrix.vector(0), &SparseVector::from_dense(&[1.0, 0.0]));
    }

    #[test]
    fn config_keys() {
        let mut c = FilterConfig::default();
        assert!(c.set("min_friends", 3));
        assert_eq!(c.min_friends, 3);
        assert!(!c.set("bogus", 1));
    }
}
