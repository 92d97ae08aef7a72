use std::collections::HashMap;
use std::fmt;

use super::CircuitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateId(pub(crate) u32);

impl GateId {
    pub fn from_index(index: usize) -> GateId {
        GateId(u32::try_from(index).expect("gate index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Signed input: `z_var` or its negation. `var` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    And,
    Or,
}

impl GateKind {
    pub fn dual(self) -> GateKind {
        match self {
            GateKind::And => GateKind::Or,
            GateKind::Or => GateKind::And,
        }
    }

    /// Value that decides the gate when any child takes it.
    pub fn absorbing(self) -> bool {
        matches!(self, GateKind::Or)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Const(bool),
    Lit(Literal),
    And(Vec<GateId>),
    Or(Vec<GateId>),
}

impl Gate {
    pub fn children(&self) -> &[GateId] {
        match self {
            Gate::And(cs) | Gate::Or(cs) => cs,
            Gate::Const(_) | Gate::Lit(_) => &[],
        }
    }

    pub fn kind(&self) -> Option<GateKind> {
        match self {
            Gate::And(_) => Some(GateKind::And),
            Gate::Or(_) => Some(GateKind::Or),
            _ => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Gate::Const(_) | Gate::Lit(_))
    }

    fn with_kind(kind: GateKind, children: Vec<GateId>) -> Gate {
        match kind {
            GateKind::And => Gate::And(children),
            GateKind::Or => Gate::Or(children),
        }
    }
}

/// Unbounded fan-in AND/OR circuit over inputs `z_0..z_{m-1}` in negation
/// normal form. Children always precede their parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    inputs: usize,
    gates: Vec<Gate>,
    output: GateId,
}

impl Circuit {
    pub fn new(inputs: usize, gates: Vec<Gate>, output: GateId) -> Result<Circuit, CircuitError> {
        let c = Circuit {
            inputs,
            gates,
            output,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn constant(inputs: usize, value: bool) -> Circuit {
        Circuit {
            inputs,
            gates: vec![Gate::Const(value)],
            output: GateId(0),
        }
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        if self.output.index() >= self.gates.len() {
            return Err(CircuitError::Malformed(format!("output {} out of range", self.output)));
        }
        for (k, gate) in self.gates.iter().enumerate() {
            match gate {
                Gate::Lit(l) if l.var >= self.inputs => {
                    return Err(CircuitError::Malformed(format!(
                        "g{k} reads input {} of {}",
                        l.var + 1,
                        self.inputs
                    )))
                }
                Gate::And(cs) | Gate::Or(cs) => {
                    if cs.is_empty() {
                        return Err(CircuitError::Malformed(format!("g{k} has no children")));
                    }
                    if let Some(c) = cs.iter().find(|c| c.index() >= k) {
                        return Err(CircuitError::Malformed(format!("g{k} reads later gate {c}")));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Output value if the circuit is a constant.
    pub fn as_constant(&self) -> Option<bool> {
        match self.gate(self.output) {
            Gate::Const(b) => Some(*b),
            _ => None,
        }
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        seen[self.output.index()] = true;
        for k in (0..self.gates.len()).rev() {
            if seen[k] {
                for c in self.gates[k].children() {
                    seen[c.index()] = true;
                }
            }
        }
        seen
    }

    /// Longest path to a leaf, per gate.
    pub fn gate_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.gates.len()];
        for (k, gate) in self.gates.iter().enumerate() {
            depth[k] = gate
                .children()
                .iter()
                .map(|c| depth[c.index()] + 1)
                .max()
                .unwrap_or(0);
        }
        depth
    }

    pub fn depth(&self) -> usize {
        self.gate_depths()[self.output.index()]
    }

    /// Variables read by some reachable literal.
    pub fn support(&self) -> Vec<usize> {
        let reach = self.reachable();
        let mut vars: Vec<usize> = self
            .gates
            .iter()
            .zip(&reach)
            .filter_map(|(g, &r)| match g {
                Gate::Lit(l) if r => Some(l.var),
                _ => None,
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.inputs, "assignment length");
        let mut val = vec![false; self.gates.len()];
        for (k, gate) in self.gates.iter().enumerate() {
            val[k] = match gate {
                Gate::Const(b) => *b,
                Gate::Lit(l) => l.eval(assignment[l.var]),
                Gate::And(cs) => cs.iter().all(|c| val[c.index()]),
                Gate::Or(cs) => cs.iter().any(|c| val[c.index()]),
            };
        }
        val[self.output.index()]
    }

    /// Evaluates 64 assignments at once: bit `s` of `lanes[v]` is input `v`
    /// of assignment `s`.
    pub fn eval_lanes(&self, lanes: &[u64], scratch: &mut Vec<u64>) -> u64 {
        debug_assert_eq!(lanes.len(), self.inputs);
        scratch.clear();
        scratch.reserve(self.gates.len());
        for gate in &self.gates {
            let v = match gate {
                Gate::Const(b) => {
                    if *b {
                        !0
                    } else {
                        0
                    }
                }
                Gate::Lit(l) => {
                    if l.positive {
                        lanes[l.var]
                    } else {
                        !lanes[l.var]
                    }
                }
                Gate::And(cs) => cs.iter().fold(!0u64, |acc, c| acc & scratch[c.index()]),
                Gate::Or(cs) => cs.iter().fold(0u64, |acc, c| acc | scratch[c.index()]),
            };
            scratch.push(v);
        }
        scratch[self.output.index()]
    }

    /// One gate per line (`g<k> = CONST 0|1`, `g<k> = LIT +|- <var>`,
    /// `g<k> = AND g.. g..`, `g<k> = OR g.. g..`) and a final `OUTPUT g<k>`.
    /// Variables are one-based.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (k, gate) in self.gates.iter().enumerate() {
            out.push_str(&format!("g{k} = "));
            match gate {
                Gate::Const(b) => out.push_str(if *b { "CONST 1" } else { "CONST 0" }),
                Gate::Lit(l) => {
                    out.push_str(&format!("LIT {} {}", if l.positive { '+' } else { '-' }, l.var + 1))
                }
                Gate::And(cs) | Gate::Or(cs) => {
                    out.push_str(if matches!(gate, Gate::And(_)) { "AND" } else { "OR" });
                    for c in cs {
                        out.push_str(&format!(" {c}"));
                    }
                }
            }
            out.push('\n');
        }
        out.push_str(&format!("OUTPUT {}\n", self.output));
        out
    }

    pub fn from_dump(text: &str, inputs: usize) -> Result<Circuit, CircuitError> {
        let bad = |line: usize, what: &str| CircuitError::Dump {
            line,
            message: what.to_string(),
        };
        let parse_ref = |tok: &str, line: usize| -> Result<GateId, CircuitError> {
            tok.strip_prefix('g')
                .and_then(|s| s.parse().ok())
                .map(GateId)
                .ok_or_else(|| bad(line, "expected a gate reference `g<k>`"))
        };
        let mut gates = Vec::new();
        let mut output = None;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("OUTPUT") {
                output = Some(parse_ref(rest.trim(), line_no)?);
                continue;
            }
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad(line_no, "expected `g<k> = ...`"))?;
            if parse_ref(lhs.trim(), line_no)?.index() != gates.len() {
                return Err(bad(line_no, "gates must be numbered consecutively from g0"));
            }
            let toks: Vec<&str> = rhs.split_whitespace().collect();
            let gate = match toks.as_slice() {
                ["CONST", "0"] => Gate::Const(false),
                ["CONST", "1"] => Gate::Const(true),
                ["LIT", sign @ ("+" | "-"), var] => {
                    let var: usize = var.parse().map_err(|_| bad(line_no, "bad variable"))?;
                    if var == 0 {
                        return Err(bad(line_no, "variables are one-based"));
                    }
                    Gate::Lit(Literal {
                        var: var - 1,
                        positive: *sign == "+",
                    })
                }
                [op @ ("AND" | "OR"), refs @ ..] => {
                    let cs = refs
                        .iter()
                        .map(|t| parse_ref(t, line_no))
                        .collect::<Result<Vec<_>, _>>()?;
                    if *op == "AND" {
                        Gate::And(cs)
                    } else {
                        Gate::Or(cs)
                    }
                }
                _ => return Err(bad(line_no, "unknown gate")),
            };
            gates.push(gate);
        }
        let output = output.ok_or_else(|| bad(0, "missing OUTPUT line"))?;
        Circuit::new(inputs, gates, output)
    }
}

/// Append-only circuit construction with structural sharing.
///
/// [`CircuitBuilder::and`] and [`CircuitBuilder::or`] fold constants, drop
/// duplicate children, fold a literal next to its complement and collapse
/// single-child gates. [`CircuitBuilder::node`] interns a gate verbatim.
#[derive(Debug)]
pub struct CircuitBuilder {
    inputs: usize,
    gates: Vec<Gate>,
    index: HashMap<Gate, GateId>,
}

impl CircuitBuilder {
    pub fn new(inputs: usize) -> Self {
        CircuitBuilder {
            inputs,
            gates: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    fn intern(&mut self, gate: Gate) -> GateId {
        if let Some(&id) = self.index.get(&gate) {
            return id;
        }
        let id = GateId(self.gates.len() as u32);
        self.gates.push(gate.clone());
        self.index.insert(gate, id);
        id
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn constant(&mut self, value: bool) -> GateId {
        self.intern(Gate::Const(value))
    }

    pub fn literal(&mut self, lit: Literal) -> GateId {
        assert!(lit.var < self.inputs, "literal on input {} of {}", lit.var, self.inputs);
        self.intern(Gate::Lit(lit))
    }

    pub fn and(&mut self, children: impl IntoIterator<Item = GateId>) -> GateId {
        self.fold(GateKind::And, children)
    }

    pub fn or(&mut self, children: impl IntoIterator<Item = GateId>) -> GateId {
        self.fold(GateKind::Or, children)
    }

    pub fn fold(&mut self, kind: GateKind, children: impl IntoIterator<Item = GateId>) -> GateId {
        let absorbing = kind.absorbing();
        let mut kept: Vec<GateId> = Vec::new();
        for c in children {
            match self.gates[c.index()] {
                Gate::Const(b) if b == absorbing => return self.constant(absorbing),
                Gate::Const(_) => {}
                _ => {
                    if !kept.contains(&c) {
                        kept.push(c);
                    }
                }
            }
        }
        let has_complement = kept.iter().any(|&c| match self.gates[c.index()] {
            Gate::Lit(l) => {
                let comp = Gate::Lit(l.negated());
                self.index.get(&comp).is_some_and(|id| kept.contains(id))
            }
            _ => false,
        });
        if has_complement {
            return self.constant(absorbing);
        }
        match kept.len() {
            0 => self.constant(!absorbing),
            1 => kept[0],
            _ => self.intern(Gate::with_kind(kind, kept)),
        }
    }

    /// Interns `kind(children)` without simplification.
    pub fn node(&mut self, kind: GateKind, children: Vec<GateId>) -> GateId {
        assert!(!children.is_empty());
        self.intern(Gate::with_kind(kind, children))
    }

    /// Keeps only gates reachable from `output`, in creation order.
    pub fn finish(self, output: GateId) -> Circuit {
        let full = Circuit {
            inputs: self.inputs,
            gates: self.gates,
            output,
        };
        full.compacted()
    }
}

impl Circuit {
    /// Drops unreachable gates and renumbers.
    pub fn compacted(&self) -> Circuit {
        let reach = self.reachable();
        let mut remap = vec![u32::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (k, gate) in self.gates.iter().enumerate() {
            if !reach[k] {
                continue;
            }
            remap[k] = gates.len() as u32;
            gates.push(match gate {
                Gate::And(cs) => Gate::And(cs.iter().map(|c| GateId(remap[c.index()])).collect()),
                Gate::Or(cs) => Gate::Or(cs.iter().map(|c| GateId(remap[c.index()])).collect()),
                g => g.clone(),
            });
        }
        Circuit {
            inputs: self.inputs,
            gates,
            output: GateId(remap[self.output.index()]),
        }
    }
}
