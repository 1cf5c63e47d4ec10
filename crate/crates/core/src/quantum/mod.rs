//! Hermitian operators on `C^d1 ⊗ C^d2` and the cones they form: positive
//! operators `B₊`, separable states, PPT states and block-positive operators
//! `W₁` (witnesses are `W₁ \ B₊`).
//!
//! Membership in `W₁` is decided by multistart see-saw search. A negative
//! product vector is an exact certificate of non-membership; its absence is
//! only evidence.

pub mod corpus;
pub mod hermitian;
pub mod io;
pub mod pair;
pub mod psd_face;
pub mod seesaw;
pub mod witness;

pub use hermitian::{BipartiteHermitian, ProductVector};
pub use pair::{lkch_optimality, LkchReport, QuantumPair};
pub use seesaw::{product_expectation, seesaw_min_product, SearchConfig};
pub use witness::{
    classify_witness, is_ppt, is_psd, nd_optimality_necessary, separability_small, wd_pairing_check,
    witness_zero_set, Confidence, NdReport, WitnessClass, WitnessReport, ZeroSet,
};
