//! Exchange matrices, their diagrams, mutation and mutation classes.

pub mod canonical;
pub mod class;
mod diagram;
mod matrix;

use thiserror::Error;

pub use canonical::{canonical_form, canonical_labeling, CanonicalKey};
pub use class::{
    classify_mutation_type, mutation_class, ClassEnumeration, ClassMember, ClassStatus,
    InfiniteCertificate, MutationType,
};
pub use diagram::{Diagram, Edge};
pub use matrix::{dynkin, ExchangeMatrix, MutationSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("invalid exchange matrix: {0}")]
    Invalid(String),
    #[error("vertex {} is out of range for rank {rank}", vertex + 1)]
    VertexOutOfRange { vertex: usize, rank: usize },
    #[error("diagram is disconnected")]
    Disconnected,
}
