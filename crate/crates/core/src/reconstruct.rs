//! Reconstruction from an unlabeled deck, and step-by-step checks of the
//! uniqueness argument on labeled mates.
//!
//! If `(v1, others)` is a special set of `G`, the card `C = G - v1` still
//! contains every vertex of `others` with its full degree, and
//! `N(v1) = V(C) - ⋃ N_C[u]` over `u ∈ others`. Reconstruction tries every
//! card as `C` and every nonempty subset of the card's candidate specials as
//! `others`, attaches a new vertex to the uncovered vertices, and keeps the
//! result only if its whole deck matches.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::canon::{certificate, find_isomorphism, Certificate, IsoMap};
use crate::class::{nonempty_subsets, SpecialSet};
use crate::deck::{decks_equal, recover_degrees, Deck};
use crate::error::{Error, Result};
use crate::graph::{CardIndex, Graph, VertexSet};

pub const DEFAULT_SPECIAL_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    /// (card, subset) pairs examined.
    pub candidates_tried: usize,
    pub survivors: BTreeSet<Certificate>,
    pub unique: bool,
}

/// Vertices of `card` outside every closed neighbourhood of `specials`.
pub fn attachment_set(card: &Graph, specials: VertexSet) -> VertexSet {
    card.vertices() - card.closed_neighborhood_of_set(specials)
}

/// Degree values that occur once in `degrees` and have no neighbour value.
fn gap_isolated_values(degrees: &[usize]) -> HashSet<usize> {
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    degrees
        .iter()
        .copied()
        .filter(|&d| count(d) == 1 && count(d + 1) == 0 && (d == 0 || count(d - 1) == 0))
        .collect()
}

pub fn reconstruct_from_deck(d: &Deck) -> Result<ReconstructionReport> {
    reconstruct_with_cap(d, DEFAULT_SPECIAL_CAP)
}

pub fn reconstruct_with_cap(d: &Deck, special_cap: usize) -> Result<ReconstructionReport> {
    let rec = recover_degrees(d)?;
    let degrees = rec.degree_sequence();
    let gap_values = gap_isolated_values(&degrees);

    // identical cards give identical candidates
    let mut distinct = Vec::new();
    for (i, card) in d.cards().iter().enumerate() {
        if i == 0 || d.cards()[i - 1].certificate != card.certificate {
            distinct.push((card, rec.deleted_degrees[i]));
        }
    }

    let per_card = distinct
        .par_iter()
        .map(|&(card, deleted_degree)| {
            let c = &card.graph;
            let specials: VertexSet = (0..c.order())
                .filter(|&u| gap_values.contains(&(c.rows()[u].count_ones() as usize)))
                .collect();
            if specials.len() > special_cap {
                return Err(Error::TooManySpecials {
                    count: specials.len(),
                    cap: special_cap,
                });
            }
            let mut tried = 0;
            let mut found = Vec::new();
            for subset in nonempty_subsets(specials) {
                tried += 1;
                let attach = attachment_set(c, subset);
                if attach.len() != deleted_degree {
                    continue;
                }
                let h = c.with_new_vertex(attach)?;
                if h.degree_sequence() != degrees {
                    continue;
                }
                if decks_equal(&Deck::of(&h)?, d) {
                    found.push(certificate(&h));
                }
            }
            Ok((tried, found))
        })
        .collect::<Result<Vec<_>>>()?;

    let candidates_tried = per_card.iter().map(|(t, _)| t).sum();
    let survivors: BTreeSet<_> = per_card.into_iter().flat_map(|(_, f)| f).collect();
    Ok(ReconstructionReport {
        candidates_tried,
        unique: survivors.len() == 1,
        survivors,
    })
}

/// A graph, a relabeled copy, and an isomorphism between each pair of
/// corresponding cards: `f_maps[j]` maps `g - j` onto `gprime - pi[j]`, in
/// card indices.
#[derive(Clone, Debug)]
pub struct LabeledMateTrial {
    pub g: Graph,
    pub pi: Vec<usize>,
    pub gprime: Graph,
    pub f_maps: Vec<IsoMap>,
}

impl LabeledMateTrial {
    /// Builds `gprime = relabel(g, pi)` and solves for every card isomorphism.
    pub fn new(g: Graph, pi: Vec<usize>) -> Result<Self> {
        let gprime = g.relabel(&pi)?;
        let f_maps = (0..g.order())
            .map(|j| {
                let card = g.delete_vertex(j)?;
                let mate = gprime.delete_vertex(pi[j])?;
                find_isomorphism(&card, &mate).ok_or_else(|| {
                    Error::TheoremViolation(format!("cards {j} and {} not isomorphic", pi[j]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledMateTrial {
            g,
            pi,
            gprime,
            f_maps,
        })
    }

    pub fn random<R: Rng + ?Sized>(g: Graph, rng: &mut R) -> Result<Self> {
        let mut pi: Vec<usize> = (0..g.order()).collect();
        pi.shuffle(rng);
        LabeledMateTrial::new(g, pi)
    }

    /// Checks `gprime = relabel(g, pi)` and that every `f_maps[j]` is a
    /// verified card isomorphism.
    pub fn validate(&self) -> Result<()> {
        let n = self.g.order();
        let gprime = self
            .g
            .relabel(&self.pi)
            .map_err(|e| Error::InvalidTrial(format!("pi: {e}")))?;
        if gprime != self.gprime {
            return Err(Error::InvalidTrial("gprime is not relabel(g, pi)".into()));
        }
        if self.f_maps.len() != n {
            return Err(Error::InvalidTrial(format!(
                "{} card maps for {n} vertices",
                self.f_maps.len()
            )));
        }
        for (j, f) in self.f_maps.iter().enumerate() {
            let card = self.g.delete_vertex(j)?;
            let mate = self.gprime.delete_vertex(self.pi[j])?;
            if !f.is_isomorphism(&card, &mate) {
                return Err(Error::InvalidTrial(format!(
                    "card map {j} is not an isomorphism"
                )));
            }
        }
        Ok(())
    }

    fn check(&self, special: &SpecialSet) -> Result<()> {
        self.validate()?;
        if !special.holds_in(&self.g) {
            return Err(Error::InvalidTrial(format!(
                "{special} is not a special set of g"
            )));
        }
        Ok(())
    }
}

/// For every special `vi` and every `j != i`: the card map `f_j` sends `vi`
/// to `pi(vi)`, and `vi vj` is an edge of `g` exactly when `pi(vi) pi(vj)` is
/// an edge of `gprime`.
pub fn verify_lemma1(trial: &LabeledMateTrial, special: &SpecialSet) -> Result<bool> {
    trial.check(special)?;
    let n = trial.g.order();
    let pi = &trial.pi;
    for i in special.members().iter() {
        for j in (0..n).filter(|&j| j != i) {
            let here = CardIndex::new(j);
            let there = CardIndex::new(pi[j]);
            let (Some(src), Some(dst)) = (here.to_card(i), there.to_card(pi[i])) else {
                unreachable!("i != j and pi is a bijection");
            };
            if trial.f_maps[j].apply(src) != dst {
                return Ok(false);
            }
            if trial.g.has_edge(i, j) != trial.gprime.has_edge(pi[i], pi[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The image of the special set satisfies the same conditions in `gprime`.
pub fn verify_lemma2(trial: &LabeledMateTrial, special: &SpecialSet) -> Result<bool> {
    trial.check(special)?;
    Ok(special.relabeled(&trial.pi).holds_in(&trial.gprime))
}

/// Extends the card map `f_1: g - v1 -> gprime - pi(v1)` by `v1 -> pi(v1)`
/// and checks the result is an isomorphism `g -> gprime`.
pub fn extend_f1(trial: &LabeledMateTrial, special: &SpecialSet) -> Result<IsoMap> {
    trial.check(special)?;
    let v1 = special.v1;
    let v1_image = trial.pi[v1];
    let here = CardIndex::new(v1);
    let there = CardIndex::new(v1_image);
    let f1 = &trial.f_maps[v1];

    let map: Vec<usize> = (0..trial.g.order())
        .map(|u| match here.to_card(u) {
            None => v1_image,
            Some(c) => there.from_card(f1.apply(c)),
        })
        .collect();
    let map = IsoMap::from_vec(map);

    let nbrs = trial.g.neighborhood(v1)?;
    let image = there.set_from_card(f1.image(here.set_to_card(nbrs)));
    let target = trial.gprime.neighborhood(v1_image)?;
    if image != target {
        return Err(Error::TheoremViolation(format!(
            "f_1 maps N({v1}) = {nbrs} to {image}, expected N({v1_image}) = {target}"
        )));
    }
    if !map.is_isomorphism(&trial.g, &trial.gprime) {
        return Err(Error::TheoremViolation(
            "extension of f_1 is not an isomorphism".into(),
        ));
    }
    Ok(map)
}
