use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Disjoint cover of the nodes `0..n`.
///
/// Community ids are `0..k` with no empty community, numbered in order of
/// their smallest member. Member lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling: nodes sharing a raw id share a community.
    pub fn from_assignment(raw: &[usize]) -> Self {
        let mut relabel = alloc::collections::BTreeMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, &r) in raw.iter().enumerate() {
            let next = members.len();
            let c = *relabel.entry(r).or_insert(next);
            if c == next {
                members.push(Vec::new());
            }
            members[c].push(v);
            assignment.push(c);
        }
        Partition { assignment, members }
    }

    /// Builds a partition from explicit node sets covering `0..node_count`.
    pub fn from_communities(node_count: usize, communities: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; node_count];
        for (c, set) in communities.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidPartition("empty community"));
            }
            for &v in set {
                if v >= node_count {
                    return Err(Error::NodeOutOfRange { node: v, node_count });
                }
                if raw[v] != usize::MAX {
                    return Err(Error::InvalidPartition("node in two communities"));
                }
                raw[v] = c;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("node without community"));
        }
        Ok(Self::from_assignment(&raw))
    }

    pub fn singletons(n: usize) -> Self {
        let raw: Vec<usize> = (0..n).collect();
        Self::from_assignment(&raw)
    }

    pub fn whole(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    pub fn community_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Membership predicate: both nodes in the same community.
    pub fn together(&self, u: usize, v: usize) -> bool {
        self.assignment[u] == self.assignment[v]
    }

    /// True when every community of `self` lies inside one community of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.node_count() == coarser.node_count()
            && self.members.iter().all(|set| {
                let c = coarser.community_of(set[0]);
                set.iter().all(|&v| coarser.community_of(v) == c)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_numbering() {
        let p = Partition::from_assignment(&[7, 3, 7, 9, 3]);
        assert_eq!(p.assignment(), &[0, 1, 0, 2, 1]);
        assert_eq!(p.members(1), &[1, 4]);
        assert!(p.together(0, 2));
        assert!(!p.together(0, 1));
    }

    #[test]
    fn explicit_sets_validated() {
        assert!(Partition::from_communities(3, &[vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::from_communities(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_communities(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_communities(3, &[vec![0, 1, 2], vec![]]).is_err());
    }

    #[test]
    fn refinement() {
        let fine = Partition::from_assignment(&[0, 1, 2, 2]);
        let coarse = Partition::from_assignment(&[0, 0, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::singletons(4).refines(&Partition::whole(4)));
    }
}
