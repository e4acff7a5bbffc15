//! Simple undirected graphs on at most 62 vertices, one `u64` row per vertex.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 62;

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    /// Image of the set under a vertex map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().fold(VertexSet::EMPTY, |acc, v| acc.with(f(v)))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Simple undirected labeled graph. Immutable once built.
///
/// Row `v` has bit `u` set iff `uv` is an edge. Rows are symmetric, loop-free
/// and carry no bits at positions `>= n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u, v));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from adjacency rows, validating every row invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let outside = !VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & outside != 0 {
                return Err(Error::InvalidVertex {
                    vertex: (row & outside).trailing_zeros() as usize,
                    n,
                });
            }
            if row >> v & 1 == 1 {
                return Err(Error::Loop(v, v));
            }
            for u in VertexSet(row).iter() {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows already known to satisfy the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u])
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    /// Degrees indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Degree multiset as a sorted vector.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// `N(v)`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]).with(v))
    }

    /// Union of closed neighborhoods over a vertex set.
    pub fn closed_neighborhood_of_set(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(set, |acc, v| acc | VertexSet(self.adj[v]))
    }

    /// The card `G - v`. Vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(Error::CannotDeleteLastVertex);
        }
        let rows = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| compact_row(self.adj[u], v))
            .collect();
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Graph with edge `(perm[u], perm[v])` for every edge `(u, v)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Graph {
        let mut rows = vec![0u64; self.n];
        for (u, &row) in self.adj.iter().enumerate() {
            let mut out = 0u64;
            let mut r = row;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                out |= 1 << perm[v];
                r &= r - 1;
            }
            rows[perm[u]] = out;
        }
        Graph {
            n: self.n,
            adj: rows,
        }
    }

    /// Adds a vertex `n` adjacent to exactly `attach`.
    pub fn with_new_vertex(&self, attach: VertexSet) -> Result<Graph> {
        check_order(self.n + 1)?;
        if !attach.is_subset(self.vertices()) {
            return Err(Error::InvalidVertex {
                vertex: (attach - self.vertices()).iter().next().unwrap_or(self.n),
                n: self.n,
            });
        }
        let x = self.n;
        let mut rows = self.adj.clone();
        for u in attach.iter() {
            rows[u] |= 1 << x;
        }
        rows.push(attach.0);
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        check_order(self.n + other.n)?;
        let shift = self.n;
        let rows = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|r| r << shift))
            .collect();
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(n))
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = 0u64;
    for &p in perm {
        if p >= n || seen >> p & 1 == 1 {
            return Err(Error::InvalidPermutation(n));
        }
        seen |= 1 << p;
    }
    Ok(())
}

/// Drops bit `v` from `row`, shifting higher bits down.
fn compact_row(row: u64, v: usize) -> u64 {
    let low = row & ((1u64 << v) - 1);
    let high = (row >> (v + 1)) << v;
    low | high
}

/// Index bookkeeping between a graph and its card `G - deleted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CardIndex {
    pub deleted: usize,
}

impl CardIndex {
    pub fn new(deleted: usize) -> Self {
        CardIndex { deleted }
    }

    /// Card index of original vertex `u`, or `None` for the deleted vertex.
    pub fn to_card(self, u: usize) -> Option<usize> {
        use std::cmp::Ordering::*;
        match u.cmp(&self.deleted) {
            Less => Some(u),
            Equal => None,
            Greater => Some(u - 1),
        }
    }

    /// Original vertex of card index `c`.
    pub fn from_card(self, c: usize) -> usize {
        if c < self.deleted {
            c
        } else {
            c + 1
        }
    }

    pub fn set_from_card(self, set: VertexSet) -> VertexSet {
        set.map(|c| self.from_card(c))
    }

    pub fn set_to_card(self, set: VertexSet) -> VertexSet {
        set.iter().filter_map(|u| self.to_card(u)).collect()
    }
}

/// Standard small graphs.
pub mod families {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("order within bounds")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("order within bounds")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("order within bounds")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("order within bounds")
    }

    /// Hub 0 joined to every vertex of the cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Graph {
        assert!(rim >= 3);
        let mut edges: Vec<_> = (1..=rim).map(|v| (0, v)).collect();
        edges.extend((1..rim).map(|v| (v, v + 1)));
        edges.push((rim, 1));
        Graph::from_edges(rim + 1, &edges).expect("order within bounds")
    }

    /// `K_1 ⊔ W_5`: vertex 0 isolated, hub at 1, rim 2..=6.
    pub fn isolated_plus_wheel5() -> Graph {
        complete(1).disjoint_union(&wheel(5)).expect("7 vertices")
    }

    /// `K_{1,3} ⊔ K_{1,5}`: centers at 0 and 4.
    pub fn two_stars_3_5() -> Graph {
        star(3).disjoint_union(&star(5)).expect("10 vertices")
    }
}
