//! Manifold invariants: torsion certificates, Euler characteristics, cusps,
//! volumes, wall tracking and the flat tori of oriented cycles.

mod euclidean;
mod invariants;
mod realization;
pub mod tables;
mod torsion;
mod walls;

use num_bigint::BigUint;
use thiserror::Error;

use crate::coxeter::CoxeterError;
use crate::exchange::ExchangeError;
use crate::group::GroupError;
use crate::presentation::PresentationError;

pub use euclidean::{euclidean_quotient_report, integer_rank, CycleTranslation, EuclideanQuotientReport};
pub use invariants::{
    count_cusps, manifold_invariants, manifold_report, orbifold_euler, CuspCensus, CuspClass, ManifoldReport,
    Volume,
};
pub use realization::{Realization, Source};
pub use torsion::{
    certify_realization, verify_torsion_free, verify_torsion_free_affine, TorsionCertificate, TorsionEntry,
};
pub use walls::{companion_basis, companion_basis_of, track_walls, CompanionBasis, Side, Wall, WallTracking};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("no realization: {0}")]
    NoRealization(String),
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("expected {expected}, found {found}")]
    WrongType { expected: String, found: String },
    #[error("|W| is not divisible by the order {order} of the image of {subset:?}")]
    NotDivisible { subset: Vec<usize>, order: BigUint },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

#[cfg(test)]
mod tests;
