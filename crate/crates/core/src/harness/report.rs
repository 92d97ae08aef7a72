use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    F,
    FNext,
    G,
    GNext,
    Delta,
    Named(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::F => f.write_str("f(n)"),
            Quantity::FNext => f.write_str("f(n+1)"),
            Quantity::G => f.write_str("g(n)"),
            Quantity::GNext => f.write_str("g(n+1)"),
            Quantity::Delta => f.write_str("delta"),
            Quantity::Named(s) => f.write_str(s),
        }
    }
}

/// One line of every report. Exact values carry `stderr = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub experiment: String,
    pub n: usize,
    pub quantity: Quantity,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl EstimateRow {
    /// `a - b` with combined standard error.
    pub fn difference(a: &EstimateRow, b: &EstimateRow, quantity: Quantity) -> EstimateRow {
        EstimateRow {
            experiment: a.experiment.clone(),
            n: a.n,
            quantity,
            estimate: a.estimate - b.estimate,
            stderr: a.stderr.hypot(b.stderr),
            trials: a.trials.min(b.trials),
            seed: a.seed,
        }
    }
}

pub const CSV_HEADER: [&str; 7] = ["experiment", "n", "quantity", "estimate", "stderr", "trials", "seed"];

pub fn write_csv<W: Write>(rows: &[EstimateRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            r.n.to_string(),
            r.quantity.to_string(),
            r.estimate.to_string(),
            r.stderr.to_string(),
            r.trials.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[EstimateRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is UTF-8")
}

/// Writes `rows` to `path`, header first, rows in the given order.
pub fn emit_csv(rows: &[EstimateRow], path: &Path) -> Result<(), HarnessError> {
    let io = |source: std::io::Error| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = File::create(path).map_err(io)?;
    file.write_all(csv_string(rows).as_bytes()).map_err(io)?;
    Ok(())
}
