//! Brute-force Tarskian model checking. Everything else is validated against
//! this module, so it stays a plain recursion with no shortcuts beyond the
//! host language's own `any`/`all`.

use thiserror::Error;

use crate::logic::{Atom, Formula, Sentence, Vocabulary};
use crate::models::{BinaryFunction, OrderedGraph, PartialBinaryFunction};

/// Largest `m^depth` the checker agrees to enumerate.
pub const ORACLE_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("sentence is in the {found} vocabulary, model expects {expected}")]
    VocabularyMismatch { expected: Vocabulary, found: Vocabulary },
    #[error("model has undefined entries; condition on total definedness first")]
    PartialModel,
    #[error("oracle refuses {size}^{depth} bindings (budget {ORACLE_BUDGET})")]
    TooLarge { size: usize, depth: usize },
}

/// Variable bindings, innermost last.
#[derive(Debug, Default, Clone)]
pub struct Environment<'a> {
    bindings: Vec<(&'a str, usize)>,
}

impl<'a> Environment<'a> {
    pub fn lookup(&self, name: &str) -> usize {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("unbound variable `{name}` in a closed sentence"))
    }

    fn push(&mut self, name: &'a str, value: usize) {
        self.bindings.push((name, value));
    }

    fn pop(&mut self) {
        self.bindings.pop();
    }
}

fn check_budget(size: usize, s: &Sentence) -> Result<(), SemanticsError> {
    let work = (size as u128).checked_pow(s.depth() as u32);
    match work {
        Some(w) if w <= ORACLE_BUDGET => Ok(()),
        _ => Err(SemanticsError::TooLarge {
            size,
            depth: s.depth(),
        }),
    }
}

fn check_vocabulary(s: &Sentence, expected: Vocabulary) -> Result<(), SemanticsError> {
    if s.vocabulary() == expected {
        Ok(())
    } else {
        Err(SemanticsError::VocabularyMismatch {
            expected,
            found: s.vocabulary(),
        })
    }
}

fn eval<'a>(
    f: &'a Formula,
    size: usize,
    env: &mut Environment<'a>,
    atom: &impl Fn(&Atom, &Environment<'a>) -> bool,
) -> bool {
    match f {
        Formula::Atom(a) => atom(a, env),
        Formula::Not(g) => !eval(g, size, env, atom),
        Formula::And(gs) => gs.iter().all(|g| eval(g, size, env, atom)),
        Formula::Or(gs) => gs.iter().any(|g| eval(g, size, env, atom)),
        Formula::Implies(l, r) => !eval(l, size, env, atom) || eval(r, size, env, atom),
        Formula::Iff(l, r) => eval(l, size, env, atom) == eval(r, size, env, atom),
        Formula::Exists(v, body) => (0..size).any(|x| {
            env.push(v, x);
            let holds = eval(body, size, env, atom);
            env.pop();
            holds
        }),
        Formula::Forall(v, body) => (0..size).all(|x| {
            env.push(v, x);
            let holds = eval(body, size, env, atom);
            env.pop();
            holds
        }),
    }
}

/// `G |= s`. Over the empty graph `exists` is false and `forall` is true.
pub fn eval_graph_sentence(g: &OrderedGraph, s: &Sentence) -> Result<bool, SemanticsError> {
    check_vocabulary(s, Vocabulary::GraphOrder)?;
    check_budget(g.size(), s)?;
    let atom = |a: &Atom, env: &Environment| match a {
        Atom::Eq(x, y) => env.lookup(x) == env.lookup(y),
        Atom::Less(x, y) => env.lookup(x) < env.lookup(y),
        Atom::Adj(x, y) => g.adjacent(env.lookup(x), env.lookup(y)),
        Atom::FEq(..) => unreachable!("vocabulary checked"),
    };
    Ok(eval(s.formula(), g.size(), &mut Environment::default(), &atom))
}

pub fn eval_function_sentence(f: &BinaryFunction, s: &Sentence) -> Result<bool, SemanticsError> {
    check_vocabulary(s, Vocabulary::BinaryFunction)?;
    check_budget(f.size(), s)?;
    let atom = |a: &Atom, env: &Environment| match a {
        Atom::Eq(x, y) => env.lookup(x) == env.lookup(y),
        Atom::FEq(x, y, z) => f.get(env.lookup(x), env.lookup(y)) == env.lookup(z),
        Atom::Less(..) | Atom::Adj(..) => unreachable!("vocabulary checked"),
    };
    Ok(eval(s.formula(), f.size(), &mut Environment::default(), &atom))
}

/// Evaluates on a projected function, relabelled to `0..|S|`. Any undefined
/// entry is an error.
pub fn eval_partial_function_sentence(
    f: &PartialBinaryFunction,
    s: &Sentence,
) -> Result<bool, SemanticsError> {
    check_vocabulary(s, Vocabulary::BinaryFunction)?;
    let total = f.to_total().ok_or(SemanticsError::PartialModel)?;
    eval_function_sentence(&total, s)
}
