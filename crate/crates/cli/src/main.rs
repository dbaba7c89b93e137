use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use enas_lab::evolution::{Crossover, EvolutionConfig, MutationConfig, OuterMutation};
use enas_lab::experiment::{
    fit_scaling, parse_grid, read_summary_csv, run_experiment, scaling_x, write_runs_to,
    write_summary_to, ExperimentConfig,
};
use enas_lab::fitness::fitness;
use enas_lab::network::{
    assignment_from_json, classify_point, forward, greedy_assignment, oracle_check, parse_bits,
    BruteForceCaps,
};
use enas_lab::{Error, Genotype, Problem, ProblemKey, Result};

#[derive(Debug, Parser)]
#[command(
    name = "enas-lab",
    version,
    about = "Evolutionary NAS runtime experiments on the MCC benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the fitness breakdown of a genotype as JSON.
    Fitness {
        /// Problem as `M,r`.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        genotype: PathBuf,
    },
    /// Run the forward pass for a bit vector or a point in the disc.
    Classify {
        #[arg(long)]
        problem: String,
        /// Genotype whose greedy assignment places the blocks.
        #[arg(long, conflicts_with = "assignment")]
        genotype: Option<PathBuf>,
        /// Explicit block assignment.
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// Point as `x,y`.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "bits",
            required_unless_present = "bits"
        )]
        point: Option<String>,
        /// Cell outputs, e.g. `10`.
        #[arg(long)]
        bits: Option<String>,
    },
    /// Compare the closed-form fitness with exhaustive search on a genotype grid.
    Oracle {
        #[arg(long = "M")]
        classes: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        max_count: u64,
    },
    /// Run replicates and write one CSV row per run.
    Run(ExperimentArgs),
    /// Run replicates and write one CSV summary row per grid cell.
    Sweep(ExperimentArgs),
    /// Fit `mean_generations ≈ c·rM·ln(rM)` to a summary CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// JSON experiment config; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    outer: Option<OuterMutation>,
    /// `local`, `global` or `global-shifted`.
    #[arg(long)]
    inner: Option<String>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    crossover: Option<Crossover>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Initial counts are drawn from `1..=s`; defaults to `r`.
    #[arg(long)]
    s: Option<u64>,
    #[arg(long = "max-generations")]
    max_generations: Option<u64>,
    /// Grid of `M` values, e.g. `2:24:2`.
    #[arg(long = "M-list")]
    m_list: Option<String>,
    #[arg(long = "r-list")]
    r_list: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => serde_json::from_str::<ExperimentConfig>(&read(path)?)?,
            None => {
                let mutation = MutationConfig::new(
                    self.outer.ok_or_else(|| missing("outer"))?,
                    enas_lab::evolution::InnerMutation::Local,
                );
                ExperimentConfig::new(
                    parse_grid(self.m_list.as_deref().ok_or_else(|| missing("M-list"))?)?,
                    parse_grid(self.r_list.as_deref().ok_or_else(|| missing("r-list"))?)?,
                    EvolutionConfig::one_plus_one(mutation),
                    1000,
                    0,
                )
            }
        };
        let evo = &mut cfg.evolution;
        if let Some(outer) = self.outer {
            evo.mutation.outer = outer;
        }
        if let Some(inner) = &self.inner {
            evo.mutation = MutationConfig::with_inner_label(evo.mutation.outer, inner)?;
        } else if self.config.is_none() {
            return Err(missing("inner"));
        }
        if let Some(lambda) = self.lambda {
            evo.lambda = lambda;
        }
        if let Some(crossover) = self.crossover {
            evo.crossover = crossover;
        }
        if self.s.is_some() {
            evo.s = self.s;
        }
        if let Some(cap) = self.max_generations {
            evo.max_generations = cap;
        }
        if let Some(runs) = self.runs {
            cfg.runs = runs;
        }
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if self.config.is_some() {
            if let Some(m) = &self.m_list {
                cfg.classes = parse_grid(m)?;
            }
            if let Some(r) = &self.r_list {
                cfg.r = parse_grid(r)?;
            }
        }
        if self.threads.is_some() {
            cfg.threads = self.threads;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn missing(flag: &str) -> Error {
    Error::Config(format!("--{flag} is required without --config"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_pair<T: std::str::FromStr>(text: &str, what: &str) -> Result<(T, T)> {
    let bad = || Error::Config(format!("{what} must look like a,b; got {text:?}"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn load_problem(spec: &str) -> Result<Problem> {
    let (m, r) = parse_pair::<usize>(spec, "--problem")?;
    enas_lab::problem(m, r)
}

fn load_genotype(path: &Path, p: &Problem) -> Result<Genotype> {
    let g = Genotype::from_json(&read(path)?)?;
    g.ensure_problem(p.key)?;
    Ok(g)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(fs::File::create(p).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        })?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_error(path: Option<&Path>, source: enas_lab::experiment::CsvError) -> Error {
    Error::Csv {
        path: path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source,
    }
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Fitness { problem, genotype } => {
            let p = load_problem(&problem)?;
            let g = load_genotype(&genotype, &p)?;
            print_json(&fitness(&p, &g))?;
        }
        Command::Classify {
            problem,
            genotype,
            assignment,
            point,
            bits,
        } => {
            let p = load_problem(&problem)?;
            let out = match (point, bits) {
                (_, Some(bits)) => forward(&p, &parse_bits(&bits)?)?,
                (Some(point), None) => {
                    let (x, y) = parse_pair::<f64>(&point, "--point")?;
                    let blocks = match (genotype, assignment) {
                        (_, Some(path)) => assignment_from_json(&read(&path)?)?,
                        (Some(path), None) => greedy_assignment(&p, &load_genotype(&path, &p)?),
                        (None, None) => {
                            return Err(Error::Config(
                                "--point needs --genotype or --assignment".into(),
                            ))
                        }
                    };
                    classify_point(&p, &blocks, [x, y])?
                }
                (None, None) => unreachable!("clap requires --point or --bits"),
            };
            print_json(&out)?;
        }
        Command::Oracle {
            classes,
            r,
            max_count,
        } => {
            let p = enas_lab::problem(classes, r)?;
            let caps = BruteForceCaps::default();
            if classes > caps.max_classes || r > caps.max_r {
                let worst = Genotype::filled(p.key, enas_lab::CellCounts::uniform(max_count));
                return Err(Error::InstanceTooLarge {
                    reason: format!(
                        "(M={classes}, r={r}) exceeds M <= {}, r <= {}",
                        caps.max_classes, caps.max_r
                    ),
                    estimate: enas_lab::network::enumeration_estimate(&p, &worst),
                });
            }
            let report = oracle_check(&p, max_count, caps, 1e-9)?;
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "{verdict}: {} genotypes checked for {}, max deviation {:e} (exhaustive) {:e} (greedy), tolerance {:e}",
                report.genotypes,
                ProblemKey { classes, r },
                report.max_deviation_brute_force,
                report.max_deviation_greedy,
                report.tolerance,
            );
            if let Some(g) = &report.first_mismatch {
                println!("first mismatch: {}", g.to_json());
            }
            return Ok(report.passed());
        }
        Command::Run(args) => {
            let cfg = args.config()?;
            let cells = run_experiment(&cfg)?;
            let records: Vec<_> = cells.into_iter().flat_map(|c| c.records).collect();
            let out = args.out.as_deref();
            write_runs_to(output(out)?, &records, 0).map_err(|e| csv_error(out, e))?;
        }
        Command::Sweep(args) => {
            let cfg = args.config()?;
            let rows: Vec<_> = run_experiment(&cfg)?
                .iter()
                .map(|c| c.summary_row(&cfg.evolution))
                .collect();
            let out = args.out.as_deref();
            write_summary_to(output(out)?, &rows).map_err(|e| csv_error(out, e))?;
        }
        Command::Fit { input } => {
            let rows = read_summary_csv(&input)?;
            let points: Vec<_> = rows
                .iter()
                .map(|r| (scaling_x(r.classes, r.r), r.mean_generations))
                .collect();
            print_json(&fit_scaling(&points)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
