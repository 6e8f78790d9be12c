//! Similarity and distance measures over real vectors, discrete probability
//! distributions and symbol strings, plus a randomized metric-axiom audit.

pub mod audit;
pub mod chi_square;
pub mod entropy;
pub mod error;
pub mod fidelity;
pub mod fixtures;
pub mod inner_product;
pub mod intersection;
pub mod minkowski;
pub mod ops;
pub mod rearrangement;
pub mod registry;
pub mod string_similarity;
pub mod types;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{MeasureError, Result};
pub use ops::{normalize, rank_vector};
pub use registry::{
    evaluate, lookup, registry_list, Family, InputKind, MeasureDescriptor, MetricClaim, Operand,
    Outcome, Params,
};
pub use types::*;
