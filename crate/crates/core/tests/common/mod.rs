//! Brute-force oracles. Nothing here calls the library's canonical labeling,
//! special-set search or graph6 encoder.
#![allow(dead_code)]

use rand::Rng;
use recon_core::{Graph, SpecialSet, VertexSet};

/// Adjacency matrix copy, so oracles never touch the bit rows directly.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

/// graph6 written out from the format rules with a string of '0'/'1'.
pub fn naive_graph6(adj: &[Vec<bool>]) -> String {
    let n = adj.len();
    let mut bits = String::new();
    for j in 1..n {
        for row in &adj[..j] {
            bits.push(if row[j] { '1' } else { '0' });
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push('0');
    }
    let mut out = String::new();
    out.push(char::from(63 + n as u8));
    for chunk in bits.as_bytes().chunks(6) {
        let value = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
        out.push(char::from(63 + value));
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn permuted(adj: &[Vec<bool>], perm: &[usize]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut out = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            out[perm[u]][perm[v]] = adj[u][v];
        }
    }
    out
}

/// Smallest naive graph6 string over all `n!` relabelings.
pub fn brute_key(g: &Graph, perms: &[Vec<usize>]) -> String {
    let adj = matrix(g);
    perms
        .iter()
        .map(|p| naive_graph6(&permuted(&adj, p)))
        .min()
        .unwrap()
}

/// Tries every bijection.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let (a, b) = (matrix(g), matrix(h));
    let n = a.len();
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|u| (0..n).all(|v| a[u][v] == b[p[u]][p[v]])))
}

/// Every labeled graph on `n` vertices, edges taken in row-major order.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Special sets straight from the three conditions, over every `v1` and
/// every nonempty `S ⊆ V - {v1}`.
pub fn naive_special_sets(g: &Graph) -> Vec<SpecialSet> {
    let adj = matrix(g);
    let n = adj.len();
    let deg: Vec<i64> = adj
        .iter()
        .map(|r| r.iter().filter(|&&b| b).count() as i64)
        .collect();
    let closed = |v: usize| -> Vec<usize> { (0..n).filter(|&u| u == v || adj[v][u]).collect() };
    // (ii) for a single index i
    let separated = |i: usize| {
        (0..n)
            .filter(|&j| j != i)
            .all(|j| (deg[i] - deg[j]).abs() > 1)
    };

    let mut out = Vec::new();
    for v1 in 0..n {
        if !separated(v1) {
            continue;
        }
        for s in 1u64..1 << n {
            if s >> v1 & 1 == 1 {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&u| s >> u & 1 == 1).collect();
            let k = 1 + others.len();
            if !(1 < k && k < n) {
                continue;
            }
            if !others.iter().all(|&u| separated(u)) {
                continue;
            }
            let mut covered = vec![false; n];
            for &x in std::iter::once(&v1).chain(&others) {
                for u in closed(x) {
                    covered[u] = true;
                }
            }
            if !covered.iter().all(|&c| c) {
                continue;
            }
            let first = closed(v1);
            let disjoint = others
                .iter()
                .all(|&u| closed(u).iter().all(|w| !first.contains(w)));
            if disjoint {
                out.push(SpecialSet::new(v1, VertexSet(s)));
            }
        }
    }
    out.sort_by_key(|s| (s.v1, s.others.0));
    out
}
