//! Detection and optimality for a pair of proper cones `K ⊂ L`.
//!
//! An element `w ∈ L \ K` detects `ρ ∈ K* \ L*` when `ρ(w) < 0`. `w1` is
//! finer than `w2` when it detects everything `w2` does, which holds exactly
//! when `w2 - λ w1 ∈ K` for some `λ > 0`. Elements with no strictly finer
//! competitor are optimal.

pub mod oracle;
pub mod ops;
pub mod verdict;

pub use oracle::{Backend, ConePairOracle, FinerDecision, Scalar, ToJson};
pub use ops::{
    detection_superset_check, detects, improve, is_finer, is_optimal, is_optimal_with, lambda_star,
    verify_finer, verify_optimality, zero_set,
};
pub use verdict::{
    DetectionVerdict, FinerVerdict, ImproveResult, Improvement, OptimalityVerdict, RunContext,
};
