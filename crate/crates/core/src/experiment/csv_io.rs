use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evolution::RunRecord;

use super::harness::SummaryRow;

pub const RUNS_HEADER: [&str; 6] = [
    "run_index",
    "seed",
    "generations",
    "evaluations",
    "success",
    "final_fitness",
];

pub const SUMMARY_HEADER: [&str; 15] = [
    "outer",
    "inner",
    "lambda",
    "crossover",
    "M",
    "r",
    "s",
    "runs",
    "mean_generations",
    "std",
    "median",
    "ci95_lo",
    "ci95_hi",
    "mean_evaluations",
    "success_rate",
];

/// Formats like C's `%.6g`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    // Rounding can carry into the next decade, so take the exponent from
    // the rounded scientific form.
    let sci = format!("{:.5e}", x);
    let (mantissa, e) = sci.split_once('e').expect("scientific form");
    let e: i32 = e.parse().unwrap_or(exp);
    if (-4..6).contains(&e) {
        let decimals = (5 - e).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        format!("{m}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes one row per run. `first_index` is the global index of `records[0]`.
pub fn write_runs_to<W: Write>(w: W, records: &[RunRecord], first_index: usize) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(RUNS_HEADER)?;
    for (i, rec) in records.iter().enumerate() {
        out.write_record([
            (first_index + i).to_string(),
            rec.seed.to_string(),
            rec.generations.to_string(),
            rec.evaluations.to_string(),
            rec.success.to_string(),
            format_sig6(rec.final_fitness),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_summary_to<W: Write>(w: W, rows: &[SummaryRow]) -> csv::Result<()> {
    let mut out = writer(w);
    out.write_record(SUMMARY_HEADER)?;
    for row in rows {
        out.write_record([
            row.outer.to_string(),
            row.inner.clone(),
            row.lambda.to_string(),
            row.crossover.to_string(),
            row.classes.to_string(),
            row.r.to_string(),
            row.s.to_string(),
            row.runs.to_string(),
            format_sig6(row.mean_generations),
            format_sig6(row.std),
            format_sig6(row.median),
            format_sig6(row.ci95_lo),
            format_sig6(row.ci95_hi),
            format_sig6(row.mean_evaluations),
            format_sig6(row.success_rate),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_runs_csv(path: &Path, records: &[RunRecord], first_index: usize) -> Result<()> {
    write_runs_to(create(path)?, records, first_index).map_err(csv_err(path))
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    write_summary_to(create(path)?, rows).map_err(csv_err(path))
}

pub fn read_summary_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    csv::Reader::from_reader(file)
        .deserialize()
        .collect::<csv::Result<_>>()
        .map_err(csv_err(path))
}
