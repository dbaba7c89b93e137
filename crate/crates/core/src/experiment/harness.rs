use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evolution::{run, Crossover, EvolutionConfig, OuterMutation, RunRecord};
use crate::geometry::{ProblemKey, ProblemParams};
use crate::rng::derive_seed;

/// Overrides [`ExperimentConfig::threads`] when set.
pub const THREADS_ENV: &str = "ENAS_LAB_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(rename = "M")]
    pub classes: Vec<usize>,
    pub r: Vec<usize>,
    pub evolution: EvolutionConfig,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Worker count; `None` uses all cores.
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_runs() -> usize {
    1000
}

impl ExperimentConfig {
    pub fn new(
        classes: Vec<usize>,
        r: Vec<usize>,
        evolution: EvolutionConfig,
        runs: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            classes,
            r,
            evolution,
            runs,
            master_seed,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.classes.is_empty() || self.r.is_empty() {
            return Err(Error::Config("empty M or r grid".into()));
        }
        for key in self.grid() {
            ProblemKey::new(key.classes, key.r)?;
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        self.evolution.validate()
    }

    /// Grid cells in `M`-major order.
    pub fn grid(&self) -> Vec<ProblemKey> {
        self.classes
            .iter()
            .flat_map(|&classes| self.r.iter().map(move |&r| ProblemKey { classes, r }))
            .collect()
    }

    /// Configured worker count after the environment override.
    pub fn effective_threads(&self) -> Result<usize> {
        if let Ok(v) = std::env::var(THREADS_ENV) {
            return match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::Config(format!(
                    "{THREADS_ENV}={v:?} is not a positive integer"
                ))),
            };
        }
        Ok(self
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub std: f64,
    pub median: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub success_rate: f64,
    pub mean_evaluations: f64,
}

impl SummaryStats {
    /// Statistics of the generation counts. `std` is the sample deviation
    /// and the interval is `mean ± 1.96·std/√runs`.
    pub fn from_records(records: &[RunRecord]) -> Self {
        assert!(!records.is_empty(), "no records to summarize");
        let n = records.len() as f64;
        let gens: Vec<f64> = records.iter().map(|r| r.generations as f64).collect();
        let mean = gens.iter().sum::<f64>() / n;
        let std = if records.len() > 1 {
            (gens.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let mut sorted = gens.clone();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len().is_multiple_of(2) {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        } else {
            sorted[mid]
        };
        let half = 1.96 * std / n.sqrt();
        Self {
            mean,
            std,
            median,
            ci95_lo: mean - half,
            ci95_hi: mean + half,
            success_rate: records.iter().filter(|r| r.success).count() as f64 / n,
            mean_evaluations: records.iter().map(|r| r.evaluations as f64).sum::<f64>() / n,
        }
    }
}

/// One line of the summary CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub outer: OuterMutation,
    pub inner: String,
    pub lambda: usize,
    pub crossover: Crossover,
    #[serde(rename = "M")]
    pub classes: usize,
    pub r: usize,
    pub s: u64,
    pub runs: usize,
    pub mean_generations: f64,
    pub std: f64,
    pub median: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub mean_evaluations: f64,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub problem: ProblemKey,
    pub s: u64,
    pub records: Vec<RunRecord>,
    pub stats: SummaryStats,
}

impl CellResult {
    pub fn summary_row(&self, evolution: &EvolutionConfig) -> SummaryRow {
        SummaryRow {
            outer: evolution.mutation.outer,
            inner: evolution.mutation.inner_label().to_string(),
            lambda: evolution.lambda,
            crossover: evolution.crossover,
            classes: self.problem.classes,
            r: self.problem.r,
            s: self.s,
            runs: self.records.len(),
            mean_generations: self.stats.mean,
            std: self.stats.std,
            median: self.stats.median,
            ci95_lo: self.stats.ci95_lo,
            ci95_hi: self.stats.ci95_hi,
            mean_evaluations: self.stats.mean_evaluations,
            success_rate: self.stats.success_rate,
        }
    }
}

/// Runs every replicate of every grid cell. Replicate `i` of cell `c` uses
/// `derive_seed(master_seed, c·runs + i)`, so results do not depend on the
/// worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let problems: Vec<ProblemParams<f64>> = grid
        .iter()
        .map(|&k| ProblemParams::from_key(k))
        .collect::<Result<_>>()?;
    let runs = cfg.runs;
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|c| (0..runs).map(move |i| (c, i)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.effective_threads()?)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, i)| {
                let seed = derive_seed(cfg.master_seed, (c * runs + i) as u64);
                run(&problems[c], &cfg.evolution, seed).unwrap_or(RunRecord {
                    seed,
                    generations: 0,
                    evaluations: 0,
                    success: false,
                    final_fitness: 0.0,
                    trajectory: None,
                })
            })
            .collect()
    });

    Ok(grid
        .iter()
        .zip(records.chunks(runs))
        .map(|(&problem, chunk)| CellResult {
            problem,
            s: cfg.evolution.init_bound(problem.r),
            stats: SummaryStats::from_records(chunk),
            records: chunk.to_vec(),
        })
        .collect())
}

/// Parses `a:b:c` (inclusive, step `c`), `a:b` (step 1), a single value or
/// a comma-separated list of those.
pub fn parse_grid(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("invalid grid {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',') {
        let nums: Vec<usize> = part
            .trim()
            .split(':')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match nums[..] {
            [v] => out.push(v),
            [lo, hi] if lo <= hi => out.extend(lo..=hi),
            [lo, hi, step] if lo <= hi && step > 0 => out.extend((lo..=hi).step_by(step)),
            _ => return Err(bad()),
        }
    }
    Ok(out)
}
