use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::circuit::{compile_function_sentence, compile_graph_sentence};
use crate::logic::Sentence;
use crate::rng::Stream;
use crate::switching::{run_pipeline, PipelineReport, RestrictionConfig};

use super::couple::{sample_host, Host};
use super::report::{EstimateRow, Quantity};
use super::{HarnessError, ModelSpec};

#[derive(Debug, Clone)]
pub struct RestrictReport {
    pub runs: Vec<PipelineReport>,
    pub rows: Vec<EstimateRow>,
    /// Completions on which the switched circuit disagreed with the original.
    pub mismatches: u64,
}

fn mean_row(n: usize, name: &str, values: &[f64], seed: u64) -> EstimateRow {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    EstimateRow {
        experiment: "restrict".into(),
        n,
        quantity: Quantity::Named(name.into()),
        estimate: mean,
        stderr: (var / k).sqrt(),
        trials: values.len() as u64,
        seed,
    }
}

fn plain_row(n: usize, name: String, value: f64, trials: u64, seed: u64) -> EstimateRow {
    EstimateRow {
        experiment: "restrict".into(),
        n,
        quantity: Quantity::Named(name),
        estimate: value,
        stderr: 0.0,
        trials,
        seed,
    }
}

/// Runs the restriction pipeline on the sentence compiled over `trials`
/// random hosts of odd size `m`.
pub fn restriction_experiment(
    sentence: &Sentence,
    model: &ModelSpec,
    m: usize,
    trials: u64,
    stream: &Stream,
) -> Result<RestrictReport, HarnessError> {
    model.check(sentence)?;
    if m < 3 || m.is_multiple_of(2) || trials == 0 {
        return Err(HarnessError::Invalid(format!("need odd m >= 3 and trials >= 1, got m={m}")));
    }
    let n = (m - 1) / 2;
    let runs: Vec<PipelineReport> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let branch = stream.branch(t);
            let c = match sample_host(model, m, &mut branch.rng()) {
                Host::Graph(g) => compile_graph_sentence(&g, sentence)?,
                Host::Function(f) => compile_function_sentence(&f, sentence)?,
            };
            let config = RestrictionConfig::for_size(c.len(), n);
            Ok(run_pipeline(&c, &config, &branch.branch_named("pipeline"))?)
        })
        .collect::<Result<_, HarnessError>>()?;

    let seed = stream.seed();
    let collect = |f: &dyn Fn(&PipelineReport) -> f64| runs.iter().map(f).collect::<Vec<f64>>();
    let mut rows = vec![
        mean_row(n, "k", &collect(&|r| r.config.k as f64), seed),
        mean_row(n, "levelled_depth", &collect(&|r| r.levelled_depth as f64), seed),
        mean_row(n, "undecided_fraction", &collect(&|r| r.survey.fraction_undecided), seed),
        mean_row(n, "max_undecided_fanin", &collect(&|r| r.survey.max_undecided_fanin as f64), seed),
        mean_row(n, "stars_after_second", &collect(&|r| r.second_stage.star_count() as f64), seed),
        mean_row(n, "restricted_depth", &collect(&|r| r.restricted_depth as f64), seed),
        mean_row(n, "final_depth", &collect(&|r| r.final_depth as f64), seed),
    ];
    let blocks: usize = runs.iter().map(|r| r.counts.blocks).sum();
    let rate = |x: usize| if blocks == 0 { 0.0 } else { x as f64 / blocks as f64 };
    let switched: usize = runs.iter().map(|r| r.counts.switched).sum();
    let depth_fail: usize = runs.iter().map(|r| r.counts.depth_failures).sum();
    let fanin_fail: usize = runs.iter().map(|r| r.counts.fanin_failures).sum();
    rows.push(plain_row(n, "blocks".into(), blocks as f64, trials, seed));
    rows.push(plain_row(n, "switched_fraction".into(), rate(switched), trials, seed));
    rows.push(plain_row(n, "depth_failure_rate".into(), rate(depth_fail), trials, seed));
    rows.push(plain_row(n, "fanin_failure_rate".into(), rate(fanin_fail), trials, seed));
    let mismatches: u64 = runs.iter().map(|r| r.check.mismatches).sum();
    let completions: u64 = runs.iter().map(|r| r.check.completions).sum();
    rows.push(plain_row(n, "mismatches".into(), mismatches as f64, completions, seed));

    // level-1 survival per fan-in, pooled over runs
    let mut by_fanin: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in &runs {
        for row in &r.survey.by_fanin {
            let e = by_fanin.entry(row.fanin).or_insert((0, 0));
            e.0 += row.gates;
            e.1 += row.undecided;
        }
    }
    for (s, (gates, undecided)) in by_fanin {
        let p = undecided as f64 / gates as f64;
        rows.push(EstimateRow {
            stderr: (p * (1.0 - p) / gates as f64).sqrt(),
            ..plain_row(n, format!("undecided(s={s})"), p, gates as u64, seed)
        });
        rows.push(plain_row(n, format!("bound_3/4(s={s})"), 0.75f64.powi(s as i32), gates as u64, seed));
        rows.push(plain_row(n, format!("bound_1/4(s={s})"), 0.25f64.powi(s as i32), gates as u64, seed));
    }
    Ok(RestrictReport { runs, rows, mismatches })
}
