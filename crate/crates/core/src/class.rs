//! Membership in the class of graphs with a special vertex set.
//!
//! A special set is `v1` together with `others = {v2, ..., vk}`, `1 < k < n`,
//! such that
//!
//! * the closed neighbourhoods of all members cover `V`,
//! * every member's degree differs by more than one from the degree of every
//!   other vertex, and
//! * `N[v1]` is disjoint from the union of `N[vi]` over `others`.
//!
//! The degree condition quantifies over all other vertices, specials
//! included, so it holds for a set exactly when it holds for each member on
//! its own. The search therefore only looks at subsets of the gap-isolated
//! vertices.

use std::fmt;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialSet {
    pub v1: usize,
    pub others: VertexSet,
}

impl SpecialSet {
    pub fn new(v1: usize, others: VertexSet) -> Self {
        SpecialSet { v1, others }
    }

    pub fn k(&self) -> usize {
        1 + self.others.len()
    }

    pub fn members(&self) -> VertexSet {
        self.others.with(self.v1)
    }

    /// Re-checks every condition directly against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let n = g.order();
        let all = g.vertices();
        if self.v1 >= n || !self.others.is_subset(all) || self.others.contains(self.v1) {
            return false;
        }
        let k = self.k();
        if !(1 < k && k < n) {
            return false;
        }
        let gap = gap_isolated_vertices(g);
        if !self.members().is_subset(gap) {
            return false;
        }
        let cover = g.closed_neighborhood_of_set(self.members());
        let v1_block = g.closed_neighborhood_of_set(VertexSet::singleton(self.v1));
        let rest = g.closed_neighborhood_of_set(self.others);
        cover == all && v1_block.is_disjoint(rest)
    }

    /// Image under a relabeling `perm`.
    pub fn relabeled(&self, perm: &[usize]) -> SpecialSet {
        SpecialSet {
            v1: perm[self.v1],
            others: self.others.map(|u| perm[u]),
        }
    }
}

impl fmt::Display for SpecialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v1={} others={} k={}", self.v1, self.others, self.k())
    }
}

/// Vertices whose degree is more than one away from every other vertex's.
pub fn gap_isolated_vertices(g: &Graph) -> VertexSet {
    let degrees = g.degrees();
    let mut by_degree = vec![0usize; g.order() + 1];
    for &d in &degrees {
        by_degree[d] += 1;
    }
    let count = |d: isize| {
        usize::try_from(d)
            .ok()
            .and_then(|d| by_degree.get(d).copied())
            .unwrap_or(0)
    };
    degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| {
            let d = d as isize;
            count(d) == 1 && count(d - 1) == 0 && count(d + 1) == 0
        })
        .map(|(v, _)| v)
        .collect()
}

/// All special sets, ordered by `v1` and then by the bit mask of `others`.
pub fn find_special_sets(g: &Graph) -> Vec<SpecialSet> {
    let n = g.order();
    let gap = gap_isolated_vertices(g);
    let mut found = Vec::new();
    if gap.len() < 2 {
        return found;
    }
    let closed: Vec<VertexSet> = (0..n).map(|v| VertexSet(g.rows()[v]).with(v)).collect();
    let all = g.vertices();
    for v1 in gap.iter() {
        let pool = gap.without(v1);
        // only candidates whose closed neighbourhood avoids N[v1]
        let pool: VertexSet = pool
            .iter()
            .filter(|&u| closed[u].is_disjoint(closed[v1]))
            .collect();
        for others in nonempty_subsets(pool) {
            if 1 + others.len() >= n {
                continue;
            }
            let cover = others.iter().fold(closed[v1], |acc, u| acc | closed[u]);
            if cover == all {
                found.push(SpecialSet { v1, others });
            }
        }
    }
    found
}

pub fn is_class_member(g: &Graph) -> bool {
    !find_special_sets(g).is_empty()
}

/// Nonempty submasks of `set` in increasing numeric order.
pub(crate) fn nonempty_subsets(set: VertexSet) -> impl Iterator<Item = VertexSet> {
    let full = set.0;
    let mut sub = 0u64;
    std::iter::from_fn(move || {
        // next submask above `sub` in numeric order
        sub = (sub.wrapping_sub(full)) & full;
        (sub != 0).then_some(VertexSet(sub))
    })
}
