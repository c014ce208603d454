//! Measuring and predicting the cost of balanced bidirectional BFS.

pub mod adversarial;
pub mod error;
pub mod expansion;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use scalar::{Base, Scalar};

/// Expansion parameters in double precision.
pub type ExpansionParams64 = expansion::ExpansionParams<f64>;
/// Expansion parameters in single precision.
pub type ExpansionParams32 = expansion::ExpansionParams<f32>;
pub type PredictedExponent64 = expansion::PredictedExponent<f64>;
pub type PredictedExponent32 = expansion::PredictedExponent<f32>;
