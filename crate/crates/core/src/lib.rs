//! Detection and optimality for nested pairs of proper cones `K ⊂ L`.
//!
//! Two backends share the [`detection`] machinery:
//!
//! * [`exact`]: polyhedral cones in `R^N` with rational arithmetic, where
//!   every question (membership, duality, faces, finer order, optimality)
//!   is decided exactly and comes with a checkable certificate.
//! * [`quantum`]: Hermitian operators on `C^d1 ⊗ C^d2` with the cones of
//!   positive operators, separable and PPT states, and entanglement
//!   witnesses; optimality of witnesses via the spanning property of their
//!   product-vector zero set.

pub mod audit;
pub mod detection;
pub mod error;
pub mod exact;
pub mod exec;
pub mod quantum;

pub use error::{Error, Result};
pub use exec::Exec;
