//! Finite host structures and the random objects drawn over them.
//!
//! Elements are zero-based throughout the API; the text dump formats are
//! one-based.

mod function;
mod graph;
mod restriction;
mod subset;

use thiserror::Error;

pub use function::{
    sample_binary_function, sample_ternary_function, undefinedness_bound, BinaryFunction,
    PartialBinaryFunction, TernaryFunction,
};
pub use graph::{sample_graph, OrderedGraph};
pub use restriction::Restriction;
pub use subset::{sample_subset_exact, SubsetSelection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("edge ({i}, {j}) is invalid on {size} vertices")]
    InvalidEdge { i: usize, j: usize, size: usize },
    #[error("subset members must be distinct elements of 0..{host}")]
    InvalidSubset { host: usize },
    #[error("function table does not describe a total function on {size} points")]
    InvalidTable { size: usize },
    #[error("model dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

impl ModelError {
    fn dump(line: usize, message: &str) -> ModelError {
        ModelError::Dump {
            line,
            message: message.to_string(),
        }
    }
}

fn dump_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize, ModelError> {
    let (line_no, first) = lines
        .next()
        .ok_or_else(|| ModelError::dump(1, "missing `m=<int>` header"))?;
    first
        .strip_prefix("m=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| ModelError::dump(line_no, "expected `m=<int>` header"))
}

fn parse_element(token: &str, size: usize, line: usize) -> Result<usize, ModelError> {
    match token.parse::<usize>() {
        Ok(v) if (1..=size).contains(&v) => Ok(v - 1),
        _ => Err(ModelError::dump(line, &format!("`{token}` is not an element of 1..{size}"))),
    }
}
