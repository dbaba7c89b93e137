//! Runtime experiments for (1+1)- and (λ+λ)-evolutionary neural
//! architecture search on the MCC multiclass benchmark.
//!
//! The geometric and fitness code is generic over [`Scalar`]; the aliases
//! below fix it to `f64`, which is what the experiment harness uses.

pub mod error;
pub mod evolution;
pub mod experiment;
pub mod fitness;
pub mod genotype;
pub mod geometry;
pub mod network;
pub mod num;
pub mod rng;

pub use error::{Error, Result};
pub use genotype::{BlockType, CellCounts, Genotype};
pub use geometry::{AtomicRegion, Location, Part, ProblemKey};
pub use num::Scalar;

pub type Problem = geometry::ProblemParams<f64>;
pub type Problem32 = geometry::ProblemParams<f32>;
pub type Fitness = fitness::FitnessBreakdown<f64>;
pub type Evaluation = fitness::Evaluation<f64>;
pub type Forward = network::ForwardOutput<f64>;

/// Builds the double-precision instance for `(M, r)`.
pub fn problem(classes: usize, r: usize) -> Result<Problem> {
    geometry::make_problem(classes, r)
}
