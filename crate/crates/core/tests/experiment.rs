use enas_lab::evolution::{
    Crossover, EvolutionConfig, InnerMutation, MutationConfig, OuterMutation,
};
use enas_lab::experiment::{
    read_summary_csv, run_experiment, write_runs_to, write_summary_csv, write_summary_to,
    ExperimentConfig,
};

fn cfg(
    classes: Vec<usize>,
    r: Vec<usize>,
    outer: OuterMutation,
    inner: InnerMutation,
    runs: usize,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig::new(
        classes,
        r,
        EvolutionConfig::one_plus_one(MutationConfig::new(outer, inner)),
        runs,
        seed,
    )
}

fn csv_bytes(cfg: &ExperimentConfig) -> (Vec<u8>, Vec<u8>) {
    let cells = run_experiment(cfg).unwrap();
    let records: Vec<_> = cells.iter().flat_map(|c| c.records.clone()).collect();
    let rows: Vec<_> = cells
        .iter()
        .map(|c| c.summary_row(&cfg.evolution))
        .collect();
    let (mut runs, mut summary) = (Vec::new(), Vec::new());
    write_runs_to(&mut runs, &records, 0).unwrap();
    write_summary_to(&mut summary, &rows).unwrap();
    (runs, summary)
}

#[test]
fn thread_count_does_not_change_output() {
    let base = cfg(
        vec![3, 5],
        vec![2, 3],
        OuterMutation::BitWise,
        InnerMutation::Global,
        40,
        99,
    );
    let one = csv_bytes(&ExperimentConfig {
        threads: Some(1),
        ..base.clone()
    });
    let eight = csv_bytes(&ExperimentConfig {
        threads: Some(8),
        ..base.clone()
    });
    assert_eq!(one, eight);
    assert_eq!(
        one,
        csv_bytes(&ExperimentConfig {
            threads: Some(1),
            ..base
        })
    );
}

#[test]
fn run_indices_are_global_and_ordered() {
    let c = cfg(
        vec![2, 3],
        vec![2],
        OuterMutation::OneBit,
        InnerMutation::Local,
        5,
        7,
    );
    let cells = run_experiment(&c).unwrap();
    let seeds: Vec<u64> = cells
        .iter()
        .flat_map(|c| c.records.iter().map(|r| r.seed))
        .collect();
    let expected: Vec<u64> = (0..10)
        .map(|i| enas_lab::experiment::derive_seed(7, i))
        .collect();
    assert_eq!(seeds, expected);
}

#[test]
fn mean_is_stable_under_more_replicates() {
    let short = run_experiment(&cfg(
        vec![2],
        vec![2],
        OuterMutation::OneBit,
        InnerMutation::Local,
        1000,
        1,
    ))
    .unwrap();
    let long = run_experiment(&cfg(
        vec![2],
        vec![2],
        OuterMutation::OneBit,
        InnerMutation::Local,
        10_000,
        2,
    ))
    .unwrap();
    let (a, b) = (short[0].stats.mean, long[0].stats.mean);
    assert!((a - b).abs() <= 0.2 * b, "{a} vs {b}");
}

#[test]
fn summary_round_trip() {
    let c = cfg(
        vec![4],
        vec![2],
        OuterMutation::OneBit,
        InnerMutation::Local,
        10,
        3,
    );
    let cells = run_experiment(&c).unwrap();
    let row = cells[0].summary_row(&c.evolution);
    assert_eq!(
        (row.lambda, row.crossover, row.s, row.runs),
        (1, Crossover::None, 2, 10)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    write_summary_csv(&path, std::slice::from_ref(&row)).unwrap();
    let back = read_summary_csv(&path).unwrap();
    assert_eq!(back.len(), 1);
    let b = &back[0];
    assert_eq!(
        (b.outer, b.inner.as_str(), b.classes, b.r, b.s, b.runs),
        (OuterMutation::OneBit, "local", 4, 2, 2, 10)
    );
    for (x, y) in [
        (b.mean_generations, row.mean_generations),
        (b.std, row.std),
        (b.median, row.median),
    ] {
        assert!((x - y).abs() <= 1e-5 * y.abs().max(1.0));
    }
}

#[test]
fn io_errors_carry_the_path() {
    let err = write_summary_csv(std::path::Path::new("/no/such/dir/s.csv"), &[]).unwrap_err();
    assert!(err.is_io());
    assert!(err.to_string().contains("/no/such/dir/s.csv"));
}
