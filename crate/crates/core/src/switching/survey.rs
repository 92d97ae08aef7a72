use rayon::prelude::*;

use crate::circuit::{level1_gates, CircuitBuilder, Circuit, Gate, GateId, GateKind, Literal, McEstimate};
use crate::models::Restriction;
use crate::rng::Stream;

use super::sampler::sample_balanced_restriction;
use super::SwitchingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSurvey {
    pub gate: GateId,
    pub fanin: usize,
    pub decided: bool,
    /// Children still reading a starred input.
    pub undecided_inputs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaninRow {
    pub fanin: usize,
    pub gates: usize,
    pub undecided: usize,
    pub fraction_undecided: f64,
    pub derived_bound: f64,
    pub quarter_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaninSurvey {
    /// `None` when the circuit has no level-1 gates.
    pub kind: Option<GateKind>,
    pub gates: Vec<GateSurvey>,
    pub fraction_undecided: f64,
    pub max_undecided_fanin: usize,
    pub by_fanin: Vec<FaninRow>,
}

fn leaf_value(gate: &Gate, rho: &Restriction) -> Option<bool> {
    match gate {
        Gate::Const(v) => Some(*v),
        Gate::Lit(l) => rho.get(l.var).map(|v| l.eval(v)),
        _ => unreachable!("level-1 gates read leaves only"),
    }
}

/// How `rho` treats each level-1 gate (gates whose children are all leaves).
/// Level 1 must be homogeneous.
pub fn level1_fanin_survey(c: &Circuit, rho: &Restriction) -> Result<FaninSurvey, SwitchingError> {
    assert_eq!(rho.host(), c.inputs());
    let ids = level1_gates(c);
    let mut kind = None;
    let mut gates = Vec::with_capacity(ids.len());
    for id in ids {
        let gate = c.gate(id);
        let k = gate.kind().unwrap();
        if *kind.get_or_insert(k) != k {
            return Err(SwitchingError::Shape("level 1 mixes AND and OR gates".into()));
        }
        let values: Vec<Option<bool>> = gate.children().iter().map(|ch| leaf_value(c.gate(*ch), rho)).collect();
        let decided = values.contains(&Some(k.absorbing())) || values.iter().all(Option::is_some);
        gates.push(GateSurvey {
            gate: id,
            fanin: values.len(),
            decided,
            undecided_inputs: values.iter().filter(|v| v.is_none()).count(),
        });
    }
    let undecided = gates.iter().filter(|g| !g.decided).count();
    let fraction_undecided = if gates.is_empty() {
        0.0
    } else {
        undecided as f64 / gates.len() as f64
    };
    let max_undecided_fanin = gates
        .iter()
        .filter(|g| !g.decided)
        .map(|g| g.undecided_inputs)
        .max()
        .unwrap_or(0);
    let mut fanins: Vec<usize> = gates.iter().map(|g| g.fanin).collect();
    fanins.sort_unstable();
    fanins.dedup();
    let by_fanin = fanins
        .into_iter()
        .map(|s| {
            let with_s: Vec<&GateSurvey> = gates.iter().filter(|g| g.fanin == s).collect();
            let und = with_s.iter().filter(|g| !g.decided).count();
            FaninRow {
                fanin: s,
                gates: with_s.len(),
                undecided: und,
                fraction_undecided: und as f64 / with_s.len() as f64,
                derived_bound: 0.75f64.powi(s as i32),
                quarter_bound: 0.25f64.powi(s as i32),
            }
        })
        .collect();
    Ok(FaninSurvey {
        kind,
        gates,
        fraction_undecided,
        max_undecided_fanin,
        by_fanin,
    })
}

/// Probability that a first-stage restriction leaves an OR of `s` distinct
/// positive literals undecided, on `m` inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalEstimate {
    pub m: usize,
    pub fanin: usize,
    pub undecided: McEstimate,
    pub derived_bound: f64,
    pub quarter_bound: f64,
}

pub fn or_gate_survival(m: usize, s: usize, trials: u64, stream: &Stream) -> Result<SurvivalEstimate, SwitchingError> {
    assert!(s >= 1 && s <= m && trials >= 1);
    let mut b = CircuitBuilder::new(m);
    let lits: Vec<GateId> = (0..s).map(|v| b.literal(Literal::pos(v))).collect();
    // raw node: a one-literal OR must stay a gate
    let out = b.node(GateKind::Or, lits);
    let c = b.finish(out);
    // validate the host once so the parallel loop cannot fail
    sample_balanced_restriction(m, &mut stream.rng())?;
    let undecided = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let rho = sample_balanced_restriction(m, &mut stream.branch(t).rng()).unwrap().restriction;
            let survey = level1_fanin_survey(&c, &rho).unwrap();
            survey.gates.iter().any(|g| !g.decided)
        })
        .count() as u64;
    Ok(SurvivalEstimate {
        m,
        fanin: s,
        undecided: McEstimate::from_hits(undecided, trials),
        derived_bound: 0.75f64.powi(s as i32),
        quarter_bound: 0.25f64.powi(s as i32),
    })
}
