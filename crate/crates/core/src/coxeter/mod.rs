//! Coxeter matrices, exact Gram-matrix analysis and the finite/affine
//! catalogue.

pub mod classify;
mod matrix;
pub mod quadfield;
pub mod subsets;

use thiserror::Error;

pub use classify::{
    catalogue_matrix, classify_components, classify_subset, identify, Component,
    ComponentClassification, Family, TypeLabel,
};
pub use matrix::{
    gram_matrix, geometric_type, CoxeterMatrix, GeometricType, Geometry, GramMatrix, Signature,
};
pub use quadfield::QuadField;
pub use subsets::{
    elliptic_subsets, has_finite_covolume, ideal_vertex_subsets, EllipticSubset, IdealSubset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    Invalid(String),
    #[error("exponent m = {0} has no exact Gram entry")]
    UnsupportedExponent(u32),
    #[error("rank {rank} exceeds the subset enumeration limit {max}")]
    TooLarge { rank: usize, max: usize },
    #[error("subdiagram on {0:?} matches no catalogue entry")]
    Unclassified(Vec<usize>),
    #[error("expected {expected}, found {found}")]
    WrongGeometry { expected: String, found: String },
}
