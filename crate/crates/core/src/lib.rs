//! Reconstruction of graphs from their vertex-deleted decks, for the class of
//! graphs with a covering, degree-separated special vertex set.

pub mod canon;
pub mod class;
pub mod deck;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod reconstruct;

pub use canon::{are_isomorphic, certificate, find_isomorphism, Certificate, IsoMap};
pub use class::{find_special_sets, gap_isolated_vertices, is_class_member, SpecialSet};
pub use deck::{decks_equal, hypomorphic_mates, recover_degrees, Deck, DegreeRecovery};
pub use enumerate::{
    enumerate_graphs, generate_class_member, verify_theorem_exhaustive, verify_theorem_shard,
    EnumerationRange, Shard, VerificationSummary,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use reconstruct::{
    extend_f1, reconstruct_from_deck, verify_lemma1, verify_lemma2, LabeledMateTrial,
    ReconstructionReport,
};
