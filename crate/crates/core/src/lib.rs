//! Quiver and diagram mutation, the Coxeter-type presentations attached to
//! them, and the invariants of the manifolds they produce.

#![allow(clippy::needless_range_loop)]

pub mod caps;
pub mod coxeter;
pub mod exchange;
pub mod group;
pub mod manifold;
pub mod presentation;
mod serde_util;

pub use caps::Caps;
