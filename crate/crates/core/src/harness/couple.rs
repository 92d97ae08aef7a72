use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{
    compile_definedness, compile_function_sentence, compile_graph_sentence, count_weight, exact_weight_probability,
    mc_weight_probability, sample_weight_assignment, Circuit,
};
use crate::logic::{Formula, Sentence};
use crate::models::{sample_graph, sample_ternary_function, undefinedness_bound, OrderedGraph, Restriction, TernaryFunction};
use crate::rng::Stream;

use super::estimate::estimate_f;
use super::report::{EstimateRow, Quantity};
use super::{HarnessError, ModelKind, ModelSpec};

/// Rejection draws allowed per accepted subset before giving up.
pub const MAX_REJECTIONS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Host {
    Graph(OrderedGraph),
    Function(TernaryFunction),
}

impl Host {
    pub fn size(&self) -> usize {
        match self {
            Host::Graph(g) => g.size(),
            Host::Function(f) => f.size(),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Host::Graph(_) => ModelKind::Graph,
            Host::Function(_) => ModelKind::Function,
        }
    }
}

pub fn sample_host<R: Rng + ?Sized>(model: &ModelSpec, m: usize, rng: &mut R) -> Host {
    match model.kind {
        ModelKind::Graph => Host::Graph(sample_graph(m, model.p, rng)),
        ModelKind::Function => Host::Function(sample_ternary_function(m, rng)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    Exact,
    MonteCarlo(u64),
}

/// `g(i)` for one host.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledG {
    pub estimate: f64,
    pub stderr: f64,
    /// Subsets enumerated (exact) or accepted samples (Monte Carlo).
    pub trials: u64,
    pub exact: Option<BigRational>,
    /// Function hosts: share of `i`-subsets whose projection is partial.
    pub undefined_fraction: Option<f64>,
}

fn conjunction(a: &Sentence, b: &Sentence) -> Sentence {
    Sentence::new(Formula::And(vec![a.formula().clone(), b.formula().clone()]), a.vocabulary())
        .expect("conjunction of sentences is a sentence")
}

fn definedness_sentence() -> Sentence {
    crate::logic::parse_sentence(
        "forall x. forall y. exists w. F(x,y) = w",
        crate::logic::Vocabulary::BinaryFunction,
    )
    .expect("static sentence")
}

/// `g(i)`: probability that the host restricted to a uniform `i`-subset
/// satisfies the sentence, through the compiled circuit. Function hosts are
/// conditioned on the projection being total.
pub fn coupled_g(sentence: &Sentence, host: &Host, i: usize, mode: SubsetMode, stream: &Stream) -> Result<CoupledG, HarnessError> {
    ModelSpec::of_kind(host.kind()).check(sentence)?;
    match host {
        Host::Graph(g) => {
            let c = compile_graph_sentence(g, sentence)?;
            match mode {
                SubsetMode::Exact => {
                    let exact = exact_weight_probability(&c, i)?;
                    Ok(CoupledG {
                        estimate: exact.to_f64().unwrap_or(f64::NAN),
                        stderr: 0.0,
                        trials: crate::circuit::binomial(g.size() as u64, i as u64) as u64,
                        exact: Some(exact),
                        undefined_fraction: None,
                    })
                }
                SubsetMode::MonteCarlo(trials) => {
                    let est = mc_weight_probability(&c, i, trials, stream)?;
                    Ok(CoupledG {
                        estimate: est.estimate,
                        stderr: est.stderr,
                        trials,
                        exact: None,
                        undefined_fraction: None,
                    })
                }
            }
        }
        Host::Function(f) => {
            let defined = compile_definedness(f);
            match mode {
                SubsetMode::Exact => {
                    let both = compile_function_sentence(f, &conjunction(sentence, &definedness_sentence()))?;
                    let star = Restriction::all_star(f.size());
                    let (def, total) = count_weight(&defined, &star, i)?;
                    let (hits, _) = count_weight(&both, &star, i)?;
                    if def == 0 {
                        return Err(HarnessError::NoDefinedSubset { m: f.size(), i });
                    }
                    let exact = BigRational::new(BigInt::from(hits), BigInt::from(def));
                    Ok(CoupledG {
                        estimate: exact.to_f64().unwrap_or(f64::NAN),
                        stderr: 0.0,
                        trials: def as u64,
                        exact: Some(exact),
                        undefined_fraction: Some(1.0 - def as f64 / total as f64),
                    })
                }
                SubsetMode::MonteCarlo(trials) => {
                    let c = compile_function_sentence(f, sentence)?;
                    mc_conditioned(&c, &defined, i, trials, stream)
                }
            }
        }
    }
}

/// Draws weight-`i` assignments until `defined` holds, then evaluates `c`.
fn mc_conditioned(c: &Circuit, defined: &Circuit, i: usize, trials: u64, stream: &Stream) -> Result<CoupledG, HarnessError> {
    let m = c.inputs();
    if trials == 0 || i > m {
        return Err(HarnessError::Invalid(format!("need trials >= 1 and i <= {m}")));
    }
    let (hits, rejected) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream.branch(t).rng();
            for rejected in 0..MAX_REJECTIONS {
                let bits = sample_weight_assignment(m, i, &mut rng);
                if defined.eval(&bits) {
                    return Ok((u64::from(c.eval(&bits)), rejected));
                }
            }
            Err(HarnessError::NoDefinedSubset { m, i })
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let est = crate::circuit::McEstimate::from_hits(hits, trials);
    Ok(CoupledG {
        estimate: est.estimate,
        stderr: est.stderr,
        trials,
        exact: None,
        undefined_fraction: Some(rejected as f64 / (rejected + trials) as f64),
    })
}

/// Direct and coupled estimates at one subset size.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPoint {
    pub i: usize,
    pub direct: EstimateRow,
    pub coupled: EstimateRow,
    pub difference: EstimateRow,
    /// `|difference| <= 3 * combined stderr`.
    pub agrees: bool,
    /// Mean share of undefined projections over hosts (function model).
    pub undefined_fraction: Option<f64>,
    /// `i^2 ((m - i)/m)^m` (function model).
    pub undefinedness_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingReport {
    pub n: usize,
    pub points: Vec<CouplingPoint>,
}

impl CouplingReport {
    pub fn rows(&self) -> Vec<EstimateRow> {
        let mut rows = Vec::new();
        for p in &self.points {
            rows.push(p.direct.clone());
            rows.push(p.coupled.clone());
            rows.push(p.difference.clone());
            if let (Some(u), Some(b)) = (p.undefined_fraction, p.undefinedness_bound) {
                let base = EstimateRow {
                    quantity: Quantity::Named(format!("undefined(i={})", p.i)),
                    estimate: u,
                    stderr: 0.0,
                    ..p.coupled.clone()
                };
                rows.push(base.clone());
                rows.push(EstimateRow {
                    quantity: Quantity::Named(format!("undefined_bound(i={})", p.i)),
                    estimate: b,
                    ..base
                });
            }
        }
        rows
    }
}

/// Settings for [`coupling_identity_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSpec {
    pub model: ModelSpec,
    pub n: usize,
    pub host_trials: u64,
    pub direct_trials: u64,
    pub mode: SubsetMode,
}

/// Compares `f(i)` sampled directly with the mean of `g_G(i)` over random
/// hosts on `[2n+1]`, for `i = n` and `i = n + 1`. Both sizes use the same
/// hosts. The coupled side's standard error is the sample standard
/// deviation of the per-host values over the square root of the host count.
pub fn coupling_identity_check(sentence: &Sentence, spec: &CouplingSpec, stream: &Stream) -> Result<CouplingReport, HarnessError> {
    spec.model.check(sentence)?;
    if spec.host_trials < 2 || spec.direct_trials == 0 {
        return Err(HarnessError::Invalid("need at least 2 host trials and 1 direct trial".into()));
    }
    let n = spec.n;
    let m = 2 * n + 1;
    let hosts = stream.branch_named("hosts");
    let mut points = Vec::new();
    for (i, direct_q, coupled_q) in [(n, Quantity::F, Quantity::G), (n + 1, Quantity::FNext, Quantity::GNext)] {
        let mut direct = estimate_f(sentence, i, spec.direct_trials, &spec.model, &stream.branch_named(&format!("direct:{i}")))?;
        direct.experiment = "couple".into();
        direct.n = n;
        direct.quantity = direct_q;
        let values: Vec<(f64, Option<f64>)> = (0..spec.host_trials)
            .into_par_iter()
            .map(|t| {
                let branch = hosts.branch(t);
                let host = sample_host(&spec.model, m, &mut branch.rng());
                let g = coupled_g(sentence, &host, i, spec.mode, &branch.branch_named(&format!("subsets:{i}")))?;
                Ok((g.estimate, g.undefined_fraction))
            })
            .collect::<Result<_, HarnessError>>()?;
        let k = values.len() as f64;
        let mean = values.iter().map(|v| v.0).sum::<f64>() / k;
        let var = values.iter().map(|v| (v.0 - mean).powi(2)).sum::<f64>() / (k - 1.0);
        let coupled = EstimateRow {
            experiment: "couple".into(),
            n,
            quantity: coupled_q,
            estimate: mean,
            stderr: (var / k).sqrt(),
            trials: spec.host_trials,
            seed: stream.seed(),
        };
        let difference = EstimateRow::difference(&direct, &coupled, Quantity::Named(format!("diff(i={i})")));
        let agrees = difference.estimate.abs() <= 3.0 * difference.stderr;
        let (undefined_fraction, undefinedness) = match spec.model.kind {
            ModelKind::Function => (
                Some(values.iter().filter_map(|v| v.1).sum::<f64>() / k),
                Some(undefinedness_bound(m, i)),
            ),
            ModelKind::Graph => (None, None),
        };
        points.push(CouplingPoint {
            i,
            direct,
            coupled,
            difference,
            agrees,
            undefined_fraction,
            undefinedness_bound: undefinedness,
        });
    }
    Ok(CouplingReport { n, points })
}
