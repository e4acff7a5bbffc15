//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Every leaf is a discrete partition, i.e. a relabeling, and the
//! certificate is the smallest graph6 encoding over all leaves. Subtrees are
//! skipped when an automorphism fixing the current individualized prefix
//! maps an already explored vertex onto the candidate. Such automorphisms come
//! from two places: transpositions of twins, and leaves that reproduce the
//! current best graph.

use std::fmt;

use crate::graph::{check_permutation, Graph, VertexSet};
use crate::graph6;

/// Canonical graph6 bytes. Equal certificates mean isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("certificates hold valid graph6")
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.as_str())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vertex bijection from one graph to another; `map[u]` is the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMap(Vec<usize>);

impl IsoMap {
    pub fn identity(n: usize) -> Self {
        IsoMap((0..n).collect())
    }

    /// Wraps a raw mapping without checking it.
    pub fn from_vec(map: Vec<usize>) -> Self {
        IsoMap(map)
    }

    pub fn apply(&self, u: usize) -> usize {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, set: VertexSet) -> VertexSet {
        set.map(|u| self.0[u])
    }

    pub fn inverse(&self) -> IsoMap {
        let mut inv = vec![0; self.0.len()];
        for (u, &v) in self.0.iter().enumerate() {
            inv[v] = u;
        }
        IsoMap(inv)
    }

    /// `self` then `next`.
    pub fn then(&self, next: &IsoMap) -> IsoMap {
        IsoMap(self.0.iter().map(|&v| next.0[v]).collect())
    }

    /// Direct check: bijection onto `h`'s vertices and `uv ∈ E(g) ⇔ f(u)f(v) ∈ E(h)`.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        if g.order() != h.order() || check_permutation(&self.0, g.order()).is_err() {
            return false;
        }
        let n = g.order();
        (0..n).all(|u| (0..n).all(|v| g.has_edge(u, v) == h.has_edge(self.0[u], self.0[v])))
    }
}

/// Canonical relabeling of a graph.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
    pub certificate: Certificate,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        best: None,
        generators: Vec::new(),
    };
    let mut fixed = Vec::with_capacity(n);
    search.descend(vec![g.vertices().0], &mut fixed);
    let (labeling, bytes) = search.best.expect("search visits at least one leaf");
    CanonicalForm {
        labeling,
        certificate: Certificate(bytes),
    }
}

pub fn certificate(g: &Graph) -> Certificate {
    canonical_form(g).certificate
}

/// An isomorphism `g -> h`, composed from the two canonical labelings and
/// checked edge by edge before it is returned.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<IsoMap> {
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.certificate != ch.certificate {
        return None;
    }
    let to_h = IsoMap(ch.labeling).inverse();
    let map = IsoMap(cg.labeling).then(&to_h);
    assert!(
        map.is_isomorphism(g, h),
        "canonical labelings produced a non-isomorphism"
    );
    Some(map)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<usize>, Vec<u8>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u64>, fixed: &mut Vec<usize>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = VertexSet(cells[target]);
        let mut explored = VertexSet::EMPTY;
        for v in cell.iter() {
            if explored.iter().any(|u| self.twins(u, v)) || self.same_orbit(explored, v, fixed) {
                continue;
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1u64 << v);
            next.push(cells[target] & !(1u64 << v));
            next.extend_from_slice(&cells[target + 1..]);
            fixed.push(v);
            self.descend(next, fixed);
            fixed.pop();
            explored = explored.with(v);
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.g.order();
        let mut labeling = vec![0; n];
        for (pos, &c) in cells.iter().enumerate() {
            labeling[c.trailing_zeros() as usize] = pos;
        }
        let bytes = graph6::encode(&self.g.relabel_unchecked(&labeling));
        match &self.best {
            None => self.best = Some((labeling, bytes)),
            Some((best_lab, best_bytes)) => match bytes.cmp(best_bytes) {
                std::cmp::Ordering::Less => self.best = Some((labeling, bytes)),
                std::cmp::Ordering::Equal => {
                    let mut inv = vec![0; n];
                    for (v, &p) in best_lab.iter().enumerate() {
                        inv[p] = v;
                    }
                    let aut: Vec<usize> = labeling.iter().map(|&p| inv[p]).collect();
                    if aut.iter().enumerate().any(|(v, &w)| v != w) {
                        self.generators.push(aut);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// `u` and `v` have the same neighbours apart from each other.
    fn twins(&self, u: usize, v: usize) -> bool {
        let rows = self.g.rows();
        let mask = !((1u64 << u) | (1u64 << v));
        rows[u] & mask == rows[v] & mask
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by the known automorphisms that fix `fixed` pointwise.
    fn same_orbit(&self, explored: VertexSet, v: usize, fixed: &[usize]) -> bool {
        if explored.is_empty() || self.generators.is_empty() {
            return false;
        }
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gen in &self.generators {
            if fixed.iter().any(|&f| gen[f] != f) {
                continue;
            }
            any = true;
            for (a, &b) in gen.iter().enumerate() {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = root(&mut parent, v);
        explored.iter().any(|u| root(&mut parent, u) == rv)
    }
}

/// Refines an ordered partition until it is equitable.
///
/// Each round splits every cell by the vector of neighbour counts into the
/// cells of the previous round; fragments keep their parent's position and are
/// ordered by that vector. The first round from the unit partition therefore
/// orders vertices by degree.
fn refine(g: &Graph, mut cells: Vec<u64>) -> Vec<u64> {
    let rows = g.rows();
    loop {
        let mut next = Vec::with_capacity(cells.len());
        let mut split = false;
        for &cell in &cells {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = VertexSet(cell)
                .iter()
                .map(|v| {
                    let sig = cells.iter().map(|&c| (rows[v] & c).count_ones()).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut current = 0u64;
            for (i, (sig, v)) in keyed.iter().enumerate() {
                if i > 0 && *sig != keyed[i - 1].0 {
                    next.push(current);
                    current = 0;
                    split = true;
                }
                current |= 1u64 << v;
            }
            next.push(current);
        }
        cells = next;
        if !split {
            return cells;
        }
    }
}
