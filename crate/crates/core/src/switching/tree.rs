use crate::circuit::{Circuit, CircuitBuilder, Gate, GateId, GateKind, Literal};

use super::SwitchingError;

/// Largest number of distinct variables a decision tree is built over.
pub const MAX_TREE_VARIABLES: usize = 20;

/// A depth-2 formula: `top` over terms of the dual kind, each term a list
/// of literals. With `top = Or` this is a DNF, with `top = And` a CNF.
/// An empty term takes the value of its own identity, so an OR with an
/// empty AND term is true and an AND with an empty OR clause is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthTwo {
    pub inputs: usize,
    pub top: GateKind,
    pub terms: Vec<Vec<Literal>>,
}

impl DepthTwo {
    pub fn constant(inputs: usize, top: GateKind, value: bool) -> DepthTwo {
        // top over nothing is its identity; over one empty term it is that term's identity
        let terms = if value == top.absorbing() { vec![vec![]] } else { vec![] };
        DepthTwo { inputs, top, terms }
    }

    /// Reads a circuit of depth at most 2 as a depth-2 formula. Literal
    /// children of the top gate become one-literal terms; same-kind
    /// children are spliced in.
    pub fn from_circuit(c: &Circuit, max_fanin: usize) -> Result<DepthTwo, SwitchingError> {
        DepthTwo::from_gate(c, c.output(), max_fanin)
    }

    /// Like [`DepthTwo::from_circuit`] for the subcircuit below `id`.
    pub fn from_gate(c: &Circuit, id: GateId, max_fanin: usize) -> Result<DepthTwo, SwitchingError> {
        let gate = c.gate(id);
        let top = gate.kind().unwrap_or(GateKind::Or);
        let mut f = DepthTwo {
            inputs: c.inputs(),
            top,
            terms: Vec::new(),
        };
        match gate {
            Gate::Const(v) => return Ok(DepthTwo::constant(c.inputs(), top, *v)),
            Gate::Lit(l) => f.terms.push(vec![*l]),
            Gate::And(_) | Gate::Or(_) => {
                if f.collect(c, id)? {
                    return Ok(DepthTwo::constant(c.inputs(), top, top.absorbing()));
                }
            }
        }
        if let Some(t) = f.terms.iter().find(|t| t.len() > max_fanin) {
            return Err(SwitchingError::Fanin {
                fanin: t.len(),
                limit: max_fanin,
            });
        }
        Ok(f)
    }

    /// Builds this formula inside `b` and returns its root.
    pub fn build_into(&self, b: &mut CircuitBuilder) -> GateId {
        let terms: Vec<GateId> = self
            .terms
            .iter()
            .map(|t| {
                let lits: Vec<GateId> = t.iter().map(|&l| b.literal(l)).collect();
                b.fold(self.top.dual(), lits)
            })
            .collect();
        b.fold(self.top, terms)
    }

    /// Adds the terms below `id`; true if the top gate is decided by a constant.
    fn collect(&mut self, c: &Circuit, id: GateId) -> Result<bool, SwitchingError> {
        let absorbing = self.top.absorbing();
        for &ch in c.gate(id).children() {
            match c.gate(ch) {
                Gate::Const(v) if *v == absorbing => return Ok(true),
                Gate::Const(_) => {}
                Gate::Lit(l) => self.terms.push(vec![*l]),
                g if g.kind() == Some(self.top) => {
                    if self.collect(c, ch)? {
                        return Ok(true);
                    }
                }
                g => {
                    if let Some(term) = self.term_of(c, ch, g)? {
                        self.terms.push(term);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Literals of a bottom gate; `None` if a constant child decides it
    /// against the top gate.
    fn term_of(&self, c: &Circuit, id: GateId, gate: &Gate) -> Result<Option<Vec<Literal>>, SwitchingError> {
        let mut term = Vec::new();
        for &leaf in gate.children() {
            match c.gate(leaf) {
                Gate::Lit(l) => term.push(*l),
                Gate::Const(v) if *v == self.top.dual().absorbing() => return Ok(None),
                Gate::Const(_) => {}
                _ => return Err(SwitchingError::Shape(format!("gate {id} is deeper than level 1"))),
            }
        }
        term.sort();
        term.dedup();
        Ok(Some(term))
    }

    pub fn max_fanin(&self) -> usize {
        self.terms.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.iter().flatten().map(|l| l.var).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn term_value(&self, term: &[Literal], partial: &[Option<bool>]) -> Option<bool> {
        let kind = self.top.dual();
        let absorbing = kind.absorbing();
        let mut all_set = true;
        for l in term {
            match partial[l.var] {
                Some(v) if l.eval(v) == absorbing => return Some(absorbing),
                Some(_) => {}
                None => all_set = false,
            }
        }
        all_set.then_some(!absorbing)
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        let partial: Vec<Option<bool>> = assignment.iter().map(|&b| Some(b)).collect();
        let absorbing = self.top.absorbing();
        let hit = self.terms.iter().any(|t| self.term_value(t, &partial) == Some(absorbing));
        if hit {
            absorbing
        } else {
            !absorbing
        }
    }

    pub fn to_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.inputs);
        let out = self.build_into(&mut b);
        b.finish(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Query {
        var: usize,
        low: Box<DecisionTree>,
        high: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { low, high, .. } => 1 + low.depth().max(high.depth()),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Query { low, high, .. } => low.leaves() + high.leaves(),
        }
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Query { var, low, high } => {
                if assignment[*var] {
                    high.eval(assignment)
                } else {
                    low.eval(assignment)
                }
            }
        }
    }

    /// Root-to-leaf paths ending in a `value` leaf, as the literals they fix.
    pub fn paths_to(&self, value: bool) -> Vec<Vec<Literal>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk(value, &mut path, &mut out);
        out
    }

    fn walk(&self, value: bool, path: &mut Vec<Literal>, out: &mut Vec<Vec<Literal>>) {
        match self {
            DecisionTree::Leaf(v) => {
                if *v == value {
                    out.push(path.clone());
                }
            }
            DecisionTree::Query { var, low, high } => {
                path.push(Literal::neg(*var));
                low.walk(value, path, out);
                path.pop();
                path.push(Literal::pos(*var));
                high.walk(value, path, out);
                path.pop();
            }
        }
    }

    /// True if no variable repeats along any root-to-leaf path.
    pub fn is_read_once_per_path(&self) -> bool {
        fn go(t: &DecisionTree, seen: &mut Vec<usize>) -> bool {
            match t {
                DecisionTree::Leaf(_) => true,
                DecisionTree::Query { var, low, high } => {
                    if seen.contains(var) {
                        return false;
                    }
                    seen.push(*var);
                    let ok = go(low, seen) && go(high, seen);
                    seen.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeOutcome {
    Tree(DecisionTree),
    /// Some path needed more than `max_depth` queries.
    DepthExceeded { max_depth: usize },
}

struct Canonical<'f> {
    f: &'f DepthTwo,
    max_depth: usize,
    partial: Vec<Option<bool>>,
}

struct Exceeded;

impl Canonical<'_> {
    fn build(&mut self, depth: usize) -> Result<DecisionTree, Exceeded> {
        let absorbing = self.f.top.absorbing();
        let mut first_open = None;
        for t in &self.f.terms {
            match self.f.term_value(t, &self.partial) {
                Some(v) if v == absorbing => return Ok(DecisionTree::Leaf(absorbing)),
                Some(_) => {}
                None => {
                    if first_open.is_none() {
                        first_open = Some(t);
                    }
                }
            }
        }
        let Some(term) = first_open else {
            return Ok(DecisionTree::Leaf(!absorbing));
        };
        let mut unset: Vec<usize> = term.iter().map(|l| l.var).filter(|&v| self.partial[v].is_none()).collect();
        unset.sort_unstable();
        unset.dedup();
        self.query(&unset, depth)
    }

    fn query(&mut self, vars: &[usize], depth: usize) -> Result<DecisionTree, Exceeded> {
        let Some((&var, rest)) = vars.split_first() else {
            return self.build(depth);
        };
        if depth == self.max_depth {
            return Err(Exceeded);
        }
        self.partial[var] = Some(false);
        let low = self.query(rest, depth + 1);
        self.partial[var] = Some(true);
        let high = self.query(rest, depth + 1);
        self.partial[var] = None;
        Ok(DecisionTree::Query {
            var,
            low: Box::new(low?),
            high: Box::new(high?),
        })
    }
}

/// Canonical decision tree: take the first term not yet decided by the
/// current path, query all of its unset variables, and repeat below each
/// outcome.
pub fn build_decision_tree(f: &DepthTwo, max_depth: usize) -> Result<TreeOutcome, SwitchingError> {
    let vars = f.vars();
    if vars.len() > MAX_TREE_VARIABLES {
        return Err(SwitchingError::TooManyVariables {
            count: vars.len(),
            limit: MAX_TREE_VARIABLES,
        });
    }
    let mut run = Canonical {
        f,
        max_depth,
        partial: vec![None; f.inputs],
    };
    Ok(match run.build(0) {
        Ok(t) => TreeOutcome::Tree(t),
        Err(Exceeded) => TreeOutcome::DepthExceeded { max_depth },
    })
}

/// Reads a depth-2 formula with the given top kind off a decision tree:
/// OR of the 1-paths, or AND of the negated 0-paths.
pub fn tree_to_dual_form(tree: &DecisionTree, inputs: usize, top: GateKind) -> DepthTwo {
    let terms = match top {
        GateKind::Or => tree.paths_to(true),
        GateKind::And => tree
            .paths_to(false)
            .into_iter()
            .map(|p| p.into_iter().map(Literal::negated).collect())
            .collect(),
    };
    DepthTwo { inputs, top, terms }
}

/// Turns an OR of ANDs into an AND of ORs or the reverse, through the
/// canonical tree. `None` when the tree is deeper than `max_depth`.
pub fn invert(f: &DepthTwo, max_depth: usize) -> Result<Option<DepthTwo>, SwitchingError> {
    Ok(match build_decision_tree(f, max_depth)? {
        TreeOutcome::Tree(t) => Some(tree_to_dual_form(&t, f.inputs, f.top.dual())),
        TreeOutcome::DepthExceeded { .. } => None,
    })
}
