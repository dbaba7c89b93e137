//! Evolutionary search over genotypes: two-level mutation, crossover,
//! elitist selection and the (1+1)/(λ+λ) run loop.

mod config;
mod crossover;
mod engine;
mod mutation;
mod selection;

pub use config::{Crossover, EvolutionConfig, InnerMutation, MutationConfig, OuterMutation};
pub use crossover::{one_point_at, one_point_crossover, uniform_crossover};
pub use engine::{run, RunRecord, TrajectoryPoint};
pub use mutation::{
    inner_mutation, mutate_cell_once, operation_count, outer_mutation, select_cells, Operation,
};
pub use selection::{select, FitnessOrd, Origin, Survivor};
