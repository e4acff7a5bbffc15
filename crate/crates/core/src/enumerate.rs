//! Exhaustive small-order scans and a sampler for class members.
//!
//! A labeled graph on `n <= 7` vertices is a bit mask over the
//! `n(n-1)/2` vertex pairs, in graph6 order. Every isomorphism class has
//! exactly one labeled member equal to its own canonical form, and canonical
//! forms list vertices in nondecreasing degree order, so a scan only needs to
//! canonize masks whose degrees are already sorted.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{certificate, Certificate};
use crate::class::{find_special_sets, is_class_member};
use crate::deck::{hypomorphic_mates, Deck};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::graph6::{self, upper_triangle};
use crate::reconstruct::reconstruct_from_deck;

/// Largest order scanned over the full labeled space.
pub const FULL_SCAN_MAX: usize = 7;

const GENERATOR_MIN: usize = 5;
const GENERATOR_ATTEMPTS: usize = 5000;
const CHUNK_BITS: u32 = 12;

/// Contiguous slice `index` of `total` equal slices of the labeled space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub total: usize,
}

impl Shard {
    pub fn new(index: usize, total: usize) -> Result<Self> {
        if total == 0 || index >= total {
            return Err(Error::InvalidShard { index, total });
        }
        Ok(Shard { index, total })
    }

    fn bounds(&self, space: u64) -> (u64, u64) {
        let t = self.total as u64;
        let i = self.index as u64;
        (space * i / t, space * (i + 1) / t)
    }
}

impl FromStr for Shard {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (i, t) = s
            .split_once('/')
            .ok_or_else(|| format!("expected i/t, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
        Shard::new(parse(i)?, parse(t)?).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.total)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationRange {
    pub n: usize,
    pub edge_count_filter: Option<usize>,
    pub shard: Option<Shard>,
}

impl EnumerationRange {
    pub fn all(n: usize) -> Self {
        EnumerationRange {
            n,
            edge_count_filter: None,
            shard: None,
        }
    }

    pub fn with_edges(n: usize, edges: usize) -> Self {
        EnumerationRange {
            edge_count_filter: Some(edges),
            ..EnumerationRange::all(n)
        }
    }
}

fn check_scan_order(n: usize) -> Result<()> {
    if (1..=FULL_SCAN_MAX).contains(&n) {
        Ok(())
    } else {
        Err(Error::SearchBoundExceeded {
            n,
            max: FULL_SCAN_MAX,
        })
    }
}

struct MaskSpace {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl MaskSpace {
    fn new(n: usize) -> Self {
        MaskSpace {
            n,
            pairs: upper_triangle(n).collect(),
        }
    }

    fn size(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    fn degrees(&self, mask: u64) -> [u8; FULL_SCAN_MAX] {
        let mut deg = [0u8; FULL_SCAN_MAX];
        let mut m = mask;
        while m != 0 {
            let (i, j) = self.pairs[m.trailing_zeros() as usize];
            deg[i] += 1;
            deg[j] += 1;
            m &= m - 1;
        }
        deg
    }

    fn sorted_degrees(&self, mask: u64) -> Option<[u8; FULL_SCAN_MAX]> {
        let deg = self.degrees(mask);
        deg[..self.n]
            .windows(2)
            .all(|w| w[0] <= w[1])
            .then_some(deg)
    }

    fn graph(&self, mask: u64) -> Graph {
        let mut rows = vec![0u64; self.n];
        let mut m = mask;
        while m != 0 {
            let (i, j) = self.pairs[m.trailing_zeros() as usize];
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
            m &= m - 1;
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Runs `visit` over masks in `[lo, hi)` with the given popcount, in
    /// parallel chunks, concatenating results in mask order.
    fn scan<T: Send>(
        &self,
        (lo, hi): (u64, u64),
        edges: Option<usize>,
        visit: impl Fn(u64) -> Option<T> + Sync,
    ) -> Vec<T> {
        let chunk = 1u64 << CHUNK_BITS;
        let chunks = (hi - lo).div_ceil(chunk);
        (0..chunks)
            .into_par_iter()
            .flat_map_iter(|c| {
                let start = lo + c * chunk;
                let end = (start + chunk).min(hi);
                (start..end)
                    .filter(|m| edges.is_none_or(|e| m.count_ones() as usize == e))
                    .filter_map(&visit)
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// One graph per isomorphism class, each in canonical form, sorted by
/// certificate.
pub fn enumerate_graphs(range: EnumerationRange) -> Result<Vec<Graph>> {
    check_scan_order(range.n)?;
    let space = MaskSpace::new(range.n);
    let bounds = match range.shard {
        Some(s) => s.bounds(space.size()),
        None => (0, space.size()),
    };
    let mut found = space.scan(bounds, range.edge_count_filter, |mask| {
        space.sorted_degrees(mask)?;
        let g = space.graph(mask);
        let canonical = certificate(&g).as_bytes() == graph6::encode(&g).as_slice();
        canonical.then_some(g)
    });
    found.sort_by_cached_key(graph6::encode);
    Ok(found)
}

/// Labeled graphs with nondecreasing degrees equal to `degrees`; at least
/// one per isomorphism class with that degree sequence.
pub(crate) fn labeled_with_degrees(n: usize, degrees: &[usize]) -> Result<Vec<Graph>> {
    check_scan_order(n)?;
    let space = MaskSpace::new(n);
    let edges = degrees.iter().sum::<usize>() / 2;
    Ok(space.scan((0, space.size()), Some(edges), |mask| {
        let deg = space.sorted_degrees(mask)?;
        deg[..n]
            .iter()
            .zip(degrees)
            .all(|(&a, &b)| a as usize == b)
            .then(|| space.graph(mask))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Certificate,
    pub mates: Vec<Certificate>,
    pub survivors: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationSummary {
    pub n: usize,
    pub graphs_scanned: usize,
    pub class_members_found: usize,
    pub members_with_unique_mate: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationSummary {
    fn empty(n: usize) -> Self {
        VerificationSummary {
            n,
            graphs_scanned: 0,
            class_members_found: 0,
            members_with_unique_mate: 0,
            counterexamples: Vec::new(),
        }
    }

    /// Field-wise sum; summaries from different shards of one scan combine
    /// into the summary of the whole scan.
    pub fn merge(mut self, other: VerificationSummary) -> Self {
        assert_eq!(self.n, other.n, "summaries for different orders");
        self.graphs_scanned += other.graphs_scanned;
        self.class_members_found += other.class_members_found;
        self.members_with_unique_mate += other.members_with_unique_mate;
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort_by(|a, b| a.graph.cmp(&b.graph));
        self
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "n: {}\ngraphs_scanned: {}\nclass_members_found: {}\nmembers_with_unique_mate: {}\ncounterexamples: {}\n",
            self.n,
            self.graphs_scanned,
            self.class_members_found,
            self.members_with_unique_mate,
            self.counterexamples.len()
        );
        for c in &self.counterexamples {
            let join =
                |v: &[Certificate]| v.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",");
            out += &format!(
                "counterexample: {} mates={} survivors={}\n",
                c.graph,
                join(&c.mates),
                join(&c.survivors)
            );
        }
        out
    }
}

pub fn verify_theorem_exhaustive(n: usize) -> Result<VerificationSummary> {
    verify_theorem_shard(n, None)
}

/// Checks every class member among the isomorphism classes owned by `shard`:
/// its deck must have exactly one mate, and reconstruction must return it.
pub fn verify_theorem_shard(n: usize, shard: Option<Shard>) -> Result<VerificationSummary> {
    if n < 3 {
        return Err(Error::DeckUndefined(n));
    }
    let classes = enumerate_graphs(EnumerationRange {
        n,
        edge_count_filter: None,
        shard,
    })?;
    let mut summary = VerificationSummary::empty(n);
    summary.graphs_scanned = classes.len();
    let members: Vec<&Graph> = classes.iter().filter(|g| is_class_member(g)).collect();
    summary.class_members_found = members.len();
    let outcomes = members
        .into_iter()
        .map(|g| -> Result<Option<Counterexample>> {
            let cert = certificate(g);
            let deck = Deck::of(g)?;
            let mates = hypomorphic_mates(&deck, FULL_SCAN_MAX)?;
            let report = reconstruct_from_deck(&deck)?;
            let only_self =
                |s: &std::collections::BTreeSet<Certificate>| s.len() == 1 && s.contains(&cert);
            if only_self(&mates) && only_self(&report.survivors) {
                Ok(None)
            } else {
                Ok(Some(Counterexample {
                    graph: cert,
                    mates: mates.into_iter().collect(),
                    survivors: report.survivors.into_iter().collect(),
                }))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    for outcome in outcomes {
        match outcome {
            None => summary.members_with_unique_mate += 1,
            Some(c) => summary.counterexamples.push(c),
        }
    }
    Ok(summary)
}

/// Samples a class member on `n` vertices, or `None` once the attempt budget
/// runs out. Deterministic in `seed`.
///
/// Each attempt lays out one block per special vertex (the special and its
/// neighbours), keeps the block of `v1` apart from the others, lets the other
/// blocks overlap a little, sprinkles edges between non-special vertices and
/// finally relabels at random. The class checker decides whether it counts.
pub fn generate_class_member(n: usize, seed: u64) -> Result<Option<Graph>> {
    if !(GENERATOR_MIN..=MAX_ORDER).contains(&n) {
        return Err(Error::SearchBoundExceeded {
            n,
            max: if n < GENERATOR_MIN {
                GENERATOR_MIN
            } else {
                MAX_ORDER
            },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let Some(g) = block_attempt(n, &mut rng) else {
            continue;
        };
        if !find_special_sets(&g).is_empty() {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            return Ok(Some(g.relabel_unchecked(&perm)));
        }
    }
    Ok(None)
}

fn block_attempt(n: usize, rng: &mut impl Rng) -> Option<Graph> {
    let k = rng.gen_range(2..=(n / 3).clamp(2, 5));
    // block sizes >= 1 summing to n with block degrees pairwise >= 2 apart
    let mut cuts: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(1..n)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    if cuts.len() != k - 1 {
        return None;
    }
    let mut sizes = Vec::with_capacity(k);
    let mut prev = 0;
    for &c in cuts.iter().chain(std::iter::once(&n)) {
        sizes.push(c - prev);
        prev = c;
    }
    for (i, a) in sizes.iter().enumerate() {
        if sizes[i + 1..].iter().any(|b| a.abs_diff(*b) < 2) {
            return None;
        }
    }

    let mut rows = vec![0u64; n];
    let add = |rows: &mut Vec<u64>, u: usize, v: usize| {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    };
    let mut specials = Vec::with_capacity(k);
    let mut block_of = vec![0usize; n];
    let mut start = 0;
    for (b, &s) in sizes.iter().enumerate() {
        specials.push(start);
        block_of[start..start + s].fill(b);
        for v in start + 1..start + s {
            add(&mut rows, start, v);
        }
        start += s;
    }
    let is_special = |v: usize| specials.contains(&v);

    // overlap among the blocks of v2..vk
    let overlap = rng.gen_range(0.0..0.25);
    for v in (0..n).filter(|&v| !is_special(v) && block_of[v] != 0) {
        for (b, &sp) in specials.iter().enumerate().skip(1) {
            if b != block_of[v] && rng.gen_bool(overlap) {
                add(&mut rows, sp, v);
            }
        }
    }

    let density = rng.gen_range(0.0..0.6);
    for u in (0..n).filter(|&u| !is_special(u)) {
        for v in (u + 1..n).filter(|&v| !is_special(v)) {
            if rng.gen_bool(density) {
                add(&mut rows, u, v);
            }
        }
    }
    Some(Graph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_for_small_orders() {
        let count = |n| enumerate_graphs(EnumerationRange::all(n)).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(3), 4);
        assert_eq!(count(4), 11);
        assert_eq!(count(5), 34);
    }

    #[test]
    fn edge_filter() {
        let three = enumerate_graphs(EnumerationRange::with_edges(4, 3)).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.iter().all(|g| g.edge_count() == 3));
    }

    #[test]
    fn output_is_canonical_and_sorted() {
        let gs = enumerate_graphs(EnumerationRange::all(5)).unwrap();
        let encoded: Vec<_> = gs.iter().map(graph6::encode).collect();
        assert!(encoded.windows(2).all(|w| w[0] < w[1]));
        for g in &gs {
            assert_eq!(certificate(g).as_bytes(), graph6::encode(g).as_slice());
        }
    }

    #[test]
    fn shards_partition_the_classes() {
        let whole = enumerate_graphs(EnumerationRange::all(5)).unwrap();
        let mut parts = Vec::new();
        for i in 0..3 {
            parts.extend(
                enumerate_graphs(EnumerationRange {
                    n: 5,
                    edge_count_filter: None,
                    shard: Some(Shard::new(i, 3).unwrap()),
                })
                .unwrap(),
            );
        }
        parts.sort_by_cached_key(graph6::encode);
        assert_eq!(parts, whole);
    }

    #[test]
    fn shard_parsing() {
        assert_eq!("2/5".parse::<Shard>(), Ok(Shard { index: 2, total: 5 }));
        assert!("5/5".parse::<Shard>().is_err());
        assert!("1/0".parse::<Shard>().is_err());
        assert!("x".parse::<Shard>().is_err());
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            enumerate_graphs(EnumerationRange::all(8)),
            Err(Error::SearchBoundExceeded { n: 8, .. })
        ));
        assert_eq!(verify_theorem_exhaustive(2), Err(Error::DeckUndefined(2)));
        assert!(matches!(
            generate_class_member(4, 0),
            Err(Error::SearchBoundExceeded { .. })
        ));
    }

    #[test]
    fn small_verification() {
        for n in 3..=5 {
            let s = verify_theorem_exhaustive(n).unwrap();
            assert!(s.counterexamples.is_empty(), "{}", s.render());
            assert_eq!(s.members_with_unique_mate, s.class_members_found);
        }
    }

    #[test]
    fn generator_output_is_a_member() {
        for n in [7, 8, 10, 12] {
            let g = generate_class_member(n, 3).unwrap().expect("member found");
            assert_eq!(g.order(), n);
            assert!(is_class_member(&g));
        }
        assert_eq!(generate_class_member(9, 11), generate_class_member(9, 11));
    }

    #[test]
    fn summary_rendering() {
        let s = VerificationSummary {
            n: 4,
            graphs_scanned: 11,
            class_members_found: 0,
            members_with_unique_mate: 0,
            counterexamples: vec![],
        };
        assert_eq!(
            s.render(),
            "n: 4\ngraphs_scanned: 11\nclass_members_found: 0\nmembers_with_unique_mate: 0\ncounterexamples: 0\n"
        );
    }
}
