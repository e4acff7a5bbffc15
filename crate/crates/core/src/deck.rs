//! Vertex-deleted decks, compared as unlabeled multisets.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::canon::{certificate, Certificate};
use crate::enumerate::{self, FULL_SCAN_MAX};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Clone, Debug)]
pub struct Card {
    pub graph: Graph,
    pub certificate: Certificate,
}

impl Card {
    pub fn new(graph: Graph) -> Self {
        let certificate = certificate(&graph);
        Card { graph, certificate }
    }
}

/// The `n` cards of a graph on `n` vertices, sorted by certificate.
#[derive(Clone, Debug)]
pub struct Deck {
    n: usize,
    cards: Vec<Card>,
}

impl Deck {
    pub fn of(g: &Graph) -> Result<Deck> {
        let n = g.order();
        if n < 3 {
            return Err(Error::DeckUndefined(n));
        }
        let cards = (0..n)
            .map(|v| g.delete_vertex(v).map(Card::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(Deck::sorted(n, cards))
    }

    /// A deck from loose cards; `n` is the number of cards.
    pub fn from_cards(graphs: Vec<Graph>) -> Result<Deck> {
        let n = graphs.len();
        if n < 3 {
            return Err(Error::DeckUndefined(n));
        }
        if let Some((i, g)) = graphs.iter().enumerate().find(|(_, g)| g.order() != n - 1) {
            return Err(Error::InconsistentDeck(format!(
                "card {i} has {} vertices, expected {} for a deck of {n} cards",
                g.order(),
                n - 1
            )));
        }
        Ok(Deck::sorted(n, graphs.into_iter().map(Card::new).collect()))
    }

    fn sorted(n: usize, mut cards: Vec<Card>) -> Deck {
        cards.sort_by(|a, b| a.certificate.cmp(&b.certificate));
        Deck { n, cards }
    }

    /// Reads one graph6 card per non-empty line.
    pub fn parse(text: &str) -> Result<Deck> {
        let mut graphs = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim_end_matches(['\n', '\r']);
            if !trimmed.is_empty() {
                let g = graph6::decode_str(trimmed).map_err(|e| match e {
                    Error::Parse { offset: o, reason } => Error::Parse {
                        offset: offset + o,
                        reason,
                    },
                    other => other,
                })?;
                graphs.push(g);
            }
            offset += line.len();
        }
        Deck::from_cards(graphs)
    }

    /// One graph6 card per line, in certificate order.
    pub fn to_text(&self) -> String {
        self.cards
            .iter()
            .map(|c| graph6::encode_string(&c.graph) + "\n")
            .collect()
    }

    /// Vertex count of the graph the deck came from.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.cards.iter().map(|c| &c.certificate)
    }
}

impl PartialEq for Deck {
    fn eq(&self, other: &Deck) -> bool {
        decks_equal(self, other)
    }
}

impl Eq for Deck {}

/// Certificate-multiset equality. Cards are kept sorted, so this is a zip.
pub fn decks_equal(a: &Deck, b: &Deck) -> bool {
    a.n == b.n && a.certificates().eq(b.certificates())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecovery {
    pub total_edges: usize,
    /// Degree of the deleted vertex, per card in deck order.
    pub deleted_degrees: Vec<usize>,
}

impl DegreeRecovery {
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.deleted_degrees.clone();
        d.sort_unstable();
        d
    }
}

/// Edge count and per-card deleted degree from the identity
/// `|E| (n - 2) = Σ |E(card)|`.
pub fn recover_degrees(d: &Deck) -> Result<DegreeRecovery> {
    let n = d.n;
    if n < 3 {
        return Err(Error::DeckUndefined(n));
    }
    let card_edges: Vec<usize> = d.cards.iter().map(|c| c.graph.edge_count()).collect();
    let sum: usize = card_edges.iter().sum();
    if !sum.is_multiple_of(n - 2) {
        return Err(Error::IllegitimateDeck(format!(
            "card edge total {sum} is not divisible by n - 2 = {}",
            n - 2
        )));
    }
    let total_edges = sum / (n - 2);
    let mut deleted_degrees = Vec::with_capacity(n);
    for (i, &e) in card_edges.iter().enumerate() {
        let deg = total_edges.checked_sub(e).ok_or_else(|| {
            Error::IllegitimateDeck(format!(
                "card {i} has {e} edges, more than the recovered total {total_edges}"
            ))
        })?;
        if deg > n - 1 {
            return Err(Error::IllegitimateDeck(format!(
                "card {i} implies a deleted vertex of degree {deg} on {n} vertices"
            )));
        }
        deleted_degrees.push(deg);
    }
    let degree_sum: usize = deleted_degrees.iter().sum();
    if degree_sum != 2 * total_edges {
        return Err(Error::IllegitimateDeck(format!(
            "recovered degrees sum to {degree_sum}, expected {}",
            2 * total_edges
        )));
    }
    Ok(DegreeRecovery {
        total_edges,
        deleted_degrees,
    })
}

/// Every graph, up to isomorphism, whose deck equals `d`.
///
/// Exhaustive over labeled graphs on `d.n()` vertices with the recovered edge
/// count and degree multiset.
pub fn hypomorphic_mates(d: &Deck, search_n_max: usize) -> Result<BTreeSet<Certificate>> {
    if search_n_max > FULL_SCAN_MAX || d.n > search_n_max {
        return Err(Error::SearchBoundExceeded {
            n: d.n.max(search_n_max),
            max: FULL_SCAN_MAX,
        });
    }
    let rec = recover_degrees(d)?;
    let degrees = rec.degree_sequence();
    let candidates = enumerate::labeled_with_degrees(d.n, &degrees)?;
    let mates = candidates
        .par_iter()
        .filter(|h| Deck::of(h).is_ok_and(|dh| decks_equal(&dh, d)))
        .map(certificate)
        .collect::<Vec<_>>();
    Ok(mates.into_iter().collect())
}
