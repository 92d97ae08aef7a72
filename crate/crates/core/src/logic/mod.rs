//! First-order sentences over the ordered-graph and binary-function vocabularies.

mod ast;
mod parser;
mod print;

use thiserror::Error;

pub use ast::{desugar, quantifier_depth, Atom, AtomKind, Formula, Sentence, Vocabulary};
pub use parser::{parse_formula, parse_sentence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("free variable `{0}` in sentence")]
    FreeVariable(String),
    #[error("atom `{atom}` is not in the {vocabulary} vocabulary")]
    Vocabulary { atom: AtomKind, vocabulary: Vocabulary },
}

impl ParseError {
    pub(crate) fn syntax(position: usize, expected: &str) -> ParseError {
        ParseError::Syntax {
            position,
            expected: expected.to_string(),
        }
    }
}
