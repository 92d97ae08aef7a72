//! Levelled form: literals and constants at level 0, every gate at level
//! `i + 1` reads only level-`i` gates, each level is all-AND or all-OR, and
//! the kinds alternate.

use std::collections::HashMap;

use super::ir::{Circuit, CircuitBuilder, Gate, GateId, GateKind};
use super::CircuitError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredCircuit {
    circuit: Circuit,
    levels: Vec<usize>,
    /// Kind of the level-1 gates; level `i` has this kind for odd `i`.
    bottom: GateKind,
}

impl LayeredCircuit {
    /// Checks that `circuit` is already levelled with the given bottom kind.
    pub fn from_circuit(circuit: Circuit, bottom: GateKind) -> Result<LayeredCircuit, CircuitError> {
        let levels = circuit.gate_depths();
        let lc = LayeredCircuit {
            circuit,
            levels,
            bottom,
        };
        lc.validate()?;
        Ok(lc)
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let reach = self.circuit.reachable();
        for (k, gate) in self.circuit.gates().iter().enumerate() {
            if !reach[k] {
                continue;
            }
            let level = self.levels[k];
            match gate.kind() {
                None if level != 0 => {
                    return Err(CircuitError::Shape(format!("leaf g{k} at level {level}")))
                }
                None => {}
                Some(kind) => {
                    if level == 0 || kind != self.kind_at(level) {
                        return Err(CircuitError::Shape(format!(
                            "g{k} is {kind} at level {level}"
                        )));
                    }
                    if gate.children().iter().any(|c| self.levels[c.index()] + 1 != level) {
                        return Err(CircuitError::Shape(format!("g{k} skips a level")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn into_circuit(self) -> Circuit {
        self.circuit
    }

    pub fn level(&self, id: GateId) -> usize {
        self.levels[id.index()]
    }

    pub fn depth(&self) -> usize {
        self.levels[self.circuit.output().index()]
    }

    pub fn bottom_kind(&self) -> GateKind {
        self.bottom
    }

    /// Gate kind used at `level >= 1`.
    pub fn kind_at(&self, level: usize) -> GateKind {
        if level % 2 == 1 {
            self.bottom
        } else {
            self.bottom.dual()
        }
    }
}

struct Leveller<'c> {
    source: &'c Circuit,
    bottom: GateKind,
    level: Vec<usize>,
    base: Vec<Option<GateId>>,
    lifted: HashMap<(usize, usize), GateId>,
    b: CircuitBuilder,
}

impl Leveller<'_> {
    fn kind_at(&self, level: usize) -> GateKind {
        if level % 2 == 1 {
            self.bottom
        } else {
            self.bottom.dual()
        }
    }

    /// Gate computing source gate `g` placed exactly at `target`.
    fn lift(&mut self, g: usize, target: usize) -> GateId {
        if target == self.level[g] {
            return self.base[g].unwrap();
        }
        if let Some(&id) = self.lifted.get(&(g, target)) {
            return id;
        }
        let below = self.lift(g, target - 1);
        let id = self.b.node(self.kind_at(target), vec![below]);
        self.lifted.insert((g, target), id);
        id
    }

    fn run(mut self) -> LayeredCircuit {
        let c = self.source;
        for (k, gate) in c.gates().iter().enumerate() {
            if let Some(kind) = gate.kind() {
                let lowest = gate.children().iter().map(|ch| self.level[ch.index()]).max().unwrap_or(0) + 1;
                self.level[k] = if self.kind_at(lowest) == kind { lowest } else { lowest + 1 };
            }
        }
        let reach = c.reachable();
        for (k, gate) in c.gates().iter().enumerate() {
            if !reach[k] {
                continue;
            }
            let id = match gate {
                Gate::Const(v) => self.b.constant(*v),
                Gate::Lit(l) => self.b.literal(*l),
                Gate::And(cs) | Gate::Or(cs) => {
                    let target = self.level[k] - 1;
                    let kids: Vec<GateId> = cs.iter().map(|ch| self.lift(ch.index(), target)).collect();
                    self.b.node(gate.kind().unwrap(), kids)
                }
            };
            self.base[k] = Some(id);
        }
        let out = self.base[c.output().index()].unwrap();
        let circuit = self.b.finish(out);
        // every gate reads only the level just below, so longest-path depth is the level
        let levels = circuit.gate_depths();
        LayeredCircuit {
            circuit,
            levels,
            bottom: self.bottom,
        }
    }
}

fn level_with(c: &Circuit, bottom: GateKind) -> LayeredCircuit {
    Leveller {
        source: c,
        bottom,
        level: vec![0; c.len()],
        base: vec![None; c.len()],
        lifted: HashMap::new(),
        b: CircuitBuilder::new(c.inputs()),
    }
    .run()
}

/// Inserts single-child pass-through gates until the circuit is levelled.
/// Both bottom kinds are tried and the shallower result kept (OR on ties).
/// Depth is at most `2 d`, where `d` is the original depth.
pub fn to_levelled(c: &Circuit) -> LayeredCircuit {
    let with_or = level_with(c, GateKind::Or);
    let with_and = level_with(c, GateKind::And);
    if with_and.depth() < with_or.depth() {
        with_and
    } else {
        with_or
    }
}

/// Levels with a prescribed bottom kind.
pub fn to_levelled_with_bottom(c: &Circuit, bottom: GateKind) -> LayeredCircuit {
    level_with(c, bottom)
}
