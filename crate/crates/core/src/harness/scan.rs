use crate::logic::Sentence;
use crate::rng::Stream;

use super::estimate::estimate_f;
use super::report::{EstimateRow, Quantity};
use super::{HarnessError, ModelSpec};

pub const SCAN_FOOTER: &str = "trend and alternation flags use 3 and 4 standard errors by convention; \
a limit of zero for f(n+1) - f(n) cannot be confirmed or refuted from finitely many sizes";

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    /// Per `n`: `f(n)`, `f(n+1)` and `delta`, in increasing `n`.
    pub rows: Vec<EstimateRow>,
    /// `|delta|` at the largest `n` exceeds `|delta|` at the smallest by more
    /// than 3 combined standard errors.
    pub growing: bool,
    /// At least three deltas, signs alternating, each beyond 4 standard errors.
    pub alternating: bool,
    pub footer: &'static str,
}

impl ScanReport {
    pub fn deltas(&self) -> impl Iterator<Item = &EstimateRow> {
        self.rows.iter().filter(|r| r.quantity == Quantity::Delta)
    }
}

fn alternating(deltas: &[&EstimateRow]) -> bool {
    deltas.len() >= 3
        && deltas.iter().all(|d| d.estimate.abs() > 4.0 * d.stderr)
        && deltas.windows(2).all(|w| w[0].estimate.signum() != w[1].estimate.signum())
}

/// Estimates `f(n)` and `f(n+1)` for each `n`, each from its own stream
/// branch, and reports `f(n+1) - f(n)`.
pub fn delta_scan(sentence: &Sentence, ns: &[usize], trials: u64, model: &ModelSpec, stream: &Stream) -> Result<ScanReport, HarnessError> {
    if ns.is_empty() {
        return Err(HarnessError::Invalid("empty range of sizes".into()));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    for &n in &ns {
        let branch = stream.branch(n as u64);
        let mut lo = estimate_f(sentence, n, trials, model, &branch.branch_named("f(n)"))?;
        let mut hi = estimate_f(sentence, n + 1, trials, model, &branch.branch_named("f(n+1)"))?;
        for (r, q) in [(&mut lo, Quantity::F), (&mut hi, Quantity::FNext)] {
            r.experiment = "scan".into();
            r.n = n;
            r.quantity = q;
        }
        let delta = EstimateRow::difference(&hi, &lo, Quantity::Delta);
        rows.extend([lo, hi, delta]);
    }
    let deltas: Vec<&EstimateRow> = rows.iter().filter(|r| r.quantity == Quantity::Delta).collect();
    let (first, last) = (deltas[0], deltas[deltas.len() - 1]);
    let growing = last.estimate.abs() - first.estimate.abs() > 3.0 * first.stderr.hypot(last.stderr);
    let alternating = alternating(&deltas);
    Ok(ScanReport {
        rows,
        growing,
        alternating,
        footer: SCAN_FOOTER,
    })
}
