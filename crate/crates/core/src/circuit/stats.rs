use std::collections::BTreeMap;

use super::ir::{Circuit, Gate, GateId, GateKind};
use super::level::LayeredCircuit;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitStats {
    pub depth: usize,
    /// Reachable AND/OR gates. Literals and constants are not counted.
    pub gate_count: usize,
    pub literal_count: usize,
    /// `per_level[l]` is the number of reachable gates at longest-path level `l`
    /// (level 0 holds literals and constants).
    pub per_level: Vec<usize>,
    /// Fan-in of each level-1 gate mapped to how many gates have it.
    pub level1_fanins: BTreeMap<usize, usize>,
}

impl CircuitStats {
    pub fn level1_gates(&self) -> usize {
        self.level1_fanins.values().sum()
    }

    pub fn max_level1_fanin(&self) -> usize {
        self.level1_fanins.keys().next_back().copied().unwrap_or(0)
    }
}

/// Reachable gates whose children are all literals or constants.
pub fn level1_gates(c: &Circuit) -> Vec<GateId> {
    let depths = c.gate_depths();
    let reach = c.reachable();
    (0..c.len())
        .filter(|&k| reach[k] && depths[k] == 1)
        .map(GateId::from_index)
        .collect()
}

/// Kind shared by all level-1 gates, `None` if there are none or they differ.
pub fn level1_kind(c: &Circuit) -> Option<GateKind> {
    let mut kinds = level1_gates(c).into_iter().map(|g| c.gate(g).kind().unwrap());
    let first = kinds.next()?;
    kinds.all(|k| k == first).then_some(first)
}

pub fn circuit_stats(c: &Circuit) -> CircuitStats {
    let depths = c.gate_depths();
    let reach = c.reachable();
    let depth = depths[c.output().index()];
    let mut per_level = vec![0; depth + 1];
    let mut gate_count = 0;
    let mut literal_count = 0;
    let mut level1_fanins = BTreeMap::new();
    for (k, gate) in c.gates().iter().enumerate() {
        if !reach[k] {
            continue;
        }
        per_level[depths[k]] += 1;
        match gate {
            Gate::Lit(_) => literal_count += 1,
            Gate::Const(_) => {}
            Gate::And(cs) | Gate::Or(cs) => {
                gate_count += 1;
                if depths[k] == 1 {
                    *level1_fanins.entry(cs.len()).or_insert(0) += 1;
                }
            }
        }
    }
    CircuitStats {
        depth,
        gate_count,
        literal_count,
        per_level,
        level1_fanins,
    }
}

pub fn layered_stats(c: &LayeredCircuit) -> CircuitStats {
    circuit_stats(c.circuit())
}
