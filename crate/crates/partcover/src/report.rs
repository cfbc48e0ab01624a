//! CSV result rows.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// One run. Empty cells mean "not applicable" (no `tau` for maximization,
/// no `guesses_tried` outside the cover problems).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub alg: String,
    pub problem: String,
    pub tau: Option<f64>,
    pub v: Option<f64>,
    pub eps: f64,
    pub alpha: f64,
    pub delta: f64,
    pub seed: u64,
    pub f_value: f64,
    pub budget: f64,
    pub solution_size: usize,
    pub fairness_diff: f64,
    pub queries: u64,
    pub time_ms: f64,
    pub guesses_tried: Option<usize>,
    /// `ok`, `infeasible` (no set reached the threshold) or `violated` (the
    /// output failed its feasibility check).
    pub status: String,
}

pub const COLUMNS: [&str; 16] = [
    "alg",
    "problem",
    "tau",
    "v",
    "eps",
    "alpha",
    "delta",
    "seed",
    "f_value",
    "budget",
    "solution_size",
    "fairness_diff",
    "queries",
    "time_ms",
    "guesses_tried",
    "status",
];

pub fn write_rows<W: Write>(out: W, rows: &[CsvRow], header: bool) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(header).from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Appends `rows` to `path`, writing the header first when the file is new
/// or empty.
pub fn append_rows(path: &Path, rows: &[CsvRow]) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let empty = file.metadata()?.len() == 0;
    write_rows(file, rows, empty)
}

pub fn read_rows(path: &Path) -> Result<Vec<CsvRow>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut reader = csv::Reader::from_reader(file);
    Ok(reader.deserialize().collect::<Result<_, _>>()?)
}
