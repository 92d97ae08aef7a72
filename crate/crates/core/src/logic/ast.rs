use std::collections::BTreeSet;
use std::fmt;

/// Which relational vocabulary a sentence is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vocabulary {
    /// `x = y`, `x < y`, `x ~ y` over an ordered graph.
    GraphOrder,
    /// `x = y` and `F(x,y) = z` over a two-place function.
    BinaryFunction,
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vocabulary::GraphOrder => f.write_str("graph"),
            Vocabulary::BinaryFunction => f.write_str("function"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Eq,
    Less,
    Adj,
    FEq,
}

impl AtomKind {
    pub fn allowed_in(self, vocabulary: Vocabulary) -> bool {
        matches!(
            (self, vocabulary),
            (AtomKind::Eq, _)
                | (AtomKind::Less | AtomKind::Adj, Vocabulary::GraphOrder)
                | (AtomKind::FEq, Vocabulary::BinaryFunction)
        )
    }
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomKind::Eq => "x = y",
            AtomKind::Less => "x < y",
            AtomKind::Adj => "x ~ y",
            AtomKind::FEq => "F(x,y) = z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Eq(String, String),
    Less(String, String),
    Adj(String, String),
    /// `F(a, b) = c`
    FEq(String, String, String),
}

impl Atom {
    pub fn kind(&self) -> AtomKind {
        match self {
            Atom::Eq(..) => AtomKind::Eq,
            Atom::Less(..) => AtomKind::Less,
            Atom::Adj(..) => AtomKind::Adj,
            Atom::FEq(..) => AtomKind::FEq,
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        match self {
            Atom::Eq(a, b) | Atom::Less(a, b) | Atom::Adj(a, b) => vec![a, b],
            Atom::FEq(a, b, c) => vec![a, b, c],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    /// At least two conjuncts.
    And(Vec<Formula>),
    /// At least two disjuncts.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    /// Quantifier rank.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0)
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.quantifier_depth().max(r.quantifier_depth())
            }
            Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + b.quantifier_depth(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go<'a>(f: &'a Formula, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(a) => {
                    for v in a.vars() {
                        if !bound.contains(&v) {
                            out.insert(v.to_string());
                        }
                    }
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| go(g, bound, out)),
                Formula::Implies(l, r) | Formula::Iff(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
                Formula::Exists(v, b) | Formula::Forall(v, b) => {
                    bound.push(v);
                    go(b, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_atoms(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit_atoms(f)),
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
        }
    }

    /// True when only Atom/Not/And/Or/Exists/Forall occur.
    pub fn is_desugared(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.is_desugared(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_desugared),
            Formula::Implies(..) | Formula::Iff(..) => false,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Formula::Atom(_) => 0,
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.size(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().map(Formula::size).sum(),
            Formula::Implies(l, r) | Formula::Iff(l, r) => l.size() + r.size(),
        }
    }
}

/// Rewrites `->` and `<->` into `!`, `&`, `|`.
pub fn desugar(f: &Formula) -> Formula {
    match f {
        Formula::Atom(a) => Formula::Atom(a.clone()),
        Formula::Not(g) => Formula::not(desugar(g)),
        Formula::And(gs) => Formula::And(gs.iter().map(desugar).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(desugar).collect()),
        Formula::Implies(l, r) => Formula::Or(vec![Formula::not(desugar(l)), desugar(r)]),
        Formula::Iff(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            Formula::And(vec![
                Formula::Or(vec![Formula::not(l.clone()), r.clone()]),
                Formula::Or(vec![Formula::not(r), l]),
            ])
        }
        Formula::Exists(v, b) => Formula::exists(v.clone(), desugar(b)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), desugar(b)),
    }
}

/// A closed formula tagged with its vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    formula: Formula,
    vocabulary: Vocabulary,
    depth: usize,
}

impl Sentence {
    /// Checks closure and vocabulary; parsing goes through this too.
    pub fn new(formula: Formula, vocabulary: Vocabulary) -> Result<Sentence, super::ParseError> {
        if let Some(v) = formula.free_vars().into_iter().next() {
            return Err(super::ParseError::FreeVariable(v));
        }
        if let Some(a) = formula.atoms().into_iter().find(|a| !a.kind().allowed_in(vocabulary)) {
            return Err(super::ParseError::Vocabulary {
                atom: a.kind(),
                vocabulary,
            });
        }
        let depth = formula.quantifier_depth();
        Ok(Sentence {
            formula,
            vocabulary,
            depth,
        })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn vocabulary(&self) -> Vocabulary {
        self.vocabulary
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn desugared(&self) -> Sentence {
        Sentence {
            formula: desugar(&self.formula),
            vocabulary: self.vocabulary,
            depth: self.depth,
        }
    }
}

pub fn quantifier_depth(s: &Sentence) -> usize {
    s.depth()
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.formula, f)
    }
}
