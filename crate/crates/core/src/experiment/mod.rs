//! Replicated runs over `(M, r)` grids, summary statistics, scaling fits and
//! CSV persistence.

mod csv_io;
mod harness;
mod scaling;

pub use crate::rng::derive_seed;
pub use csv::Error as CsvError;
pub use csv_io::{
    format_sig6, read_summary_csv, write_runs_csv, write_runs_to, write_summary_csv,
    write_summary_to, RUNS_HEADER, SUMMARY_HEADER,
};
pub use harness::{
    parse_grid, run_experiment, CellResult, ExperimentConfig, SummaryRow, SummaryStats, THREADS_ENV,
};
pub use scaling::{fit_scaling, scaling_x, ScalingFit};
