use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::circuit::McEstimate;
use crate::logic::Sentence;
use crate::models::{sample_binary_function, sample_graph, BinaryFunction, OrderedGraph};
use crate::rng::Stream;
use crate::semantics::{eval_function_sentence, eval_graph_sentence};

use super::report::{EstimateRow, Quantity};
use super::{HarnessError, ModelKind, ModelSpec};

/// Largest number of vertex pairs for exhaustive graph enumeration.
pub const EXACT_GRAPH_PAIRS: usize = 21;
/// Largest number of tables for exhaustive function enumeration.
pub const EXACT_FUNCTION_TABLES: u64 = 10_000_000;

/// Monte Carlo `f_A(n)`: the oracle on `trials` independent models of size `n`.
pub fn estimate_f(
    sentence: &Sentence,
    n: usize,
    trials: u64,
    model: &ModelSpec,
    stream: &Stream,
) -> Result<EstimateRow, HarnessError> {
    model.check(sentence)?;
    if trials == 0 {
        return Err(HarnessError::Invalid("at least one trial is required".into()));
    }
    let hits = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream.branch(t).rng();
            let verdict = match model.kind {
                ModelKind::Graph => eval_graph_sentence(&sample_graph(n, model.p, &mut rng), sentence),
                ModelKind::Function => eval_function_sentence(&sample_binary_function(n, &mut rng), sentence),
            };
            verdict.map(u64::from)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let est = McEstimate::from_hits(hits, trials);
    Ok(EstimateRow {
        experiment: "f".into(),
        n,
        quantity: Quantity::F,
        estimate: est.estimate,
        stderr: est.stderr,
        trials,
        seed: stream.seed(),
    })
}

/// Exact `f_A(n)` for graphs with edge probability `p`, enumerating all
/// `2^C(n,2)` graphs on `[n]`.
pub fn exact_f_graph(sentence: &Sentence, n: usize, p: &BigRational) -> Result<BigRational, HarnessError> {
    ModelSpec::graph(0.5).check(sentence)?;
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs > EXACT_GRAPH_PAIRS {
        return Err(HarnessError::Infeasible(format!(
            "{pairs} vertex pairs exceed the exhaustive limit {EXACT_GRAPH_PAIRS}"
        )));
    }
    // satisfying graphs per edge count
    let counts = (0..1u64 << pairs)
        .into_par_iter()
        .try_fold(
            || vec![0u64; pairs + 1],
            |mut acc, bits| {
                let g = OrderedGraph::from_pair_bits(n, bits);
                if eval_graph_sentence(&g, sentence)? {
                    acc[bits.count_ones() as usize] += 1;
                }
                Ok::<_, HarnessError>(acc)
            },
        )
        .try_reduce(
            || vec![0u64; pairs + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (e, &count) in counts.iter().enumerate() {
        if count > 0 {
            let w = num_traits::pow(p.clone(), e) * num_traits::pow(q.clone(), pairs - e);
            total += w * BigRational::from_integer(BigInt::from(count));
        }
    }
    Ok(total)
}

/// Exact `f_A(n)` for uniform binary functions on `[n]`.
pub fn exact_f_function(sentence: &Sentence, n: usize) -> Result<BigRational, HarnessError> {
    ModelSpec::function().check(sentence)?;
    let tables = (n as u64)
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= EXACT_FUNCTION_TABLES)
        .ok_or_else(|| HarnessError::Infeasible(format!("{n}^{} tables exceed the exhaustive limit", n * n)))?;
    let hits = (0..tables)
        .into_par_iter()
        .map(|k| eval_function_sentence(&BinaryFunction::from_index(n, k), sentence).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(tables)))
}
