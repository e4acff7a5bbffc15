use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("cannot delete the last vertex of a graph")]
    CannotDeleteLastVertex,
    #[error("vertex count {0} outside supported range 1..=62")]
    UnsupportedOrder(usize),
    #[error("edge {0}-{1} is a loop")]
    Loop(usize, usize),
    #[error("adjacency between {0} and {1} is not symmetric")]
    Asymmetric(usize, usize),
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: &'static str },
    #[error("deck undefined for graphs on {0} vertices (need at least 3)")]
    DeckUndefined(usize),
    #[error("inconsistent deck: {0}")]
    InconsistentDeck(String),
    #[error("illegitimate deck: {0}")]
    IllegitimateDeck(String),
    #[error("search bound exceeded: n = {n}, maximum {max}")]
    SearchBoundExceeded { n: usize, max: usize },
    #[error("{count} special candidates in a card exceeds the cap of {cap}")]
    TooManySpecials { count: usize, cap: usize },
    #[error("invalid trial: {0}")]
    InvalidTrial(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("invalid shard {index}/{total}")]
    InvalidShard { index: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
