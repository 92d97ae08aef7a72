//! Unbounded fan-in AND/OR circuits over membership inputs `z_1..z_m`.

mod compile;
mod ir;
mod level;
mod prob;
mod restrict;
mod stats;

use thiserror::Error;

use crate::logic::Vocabulary;

pub use compile::{compile_definedness, compile_function_sentence, compile_graph_sentence};
pub use ir::{Circuit, CircuitBuilder, Gate, GateId, GateKind, Literal};
pub use level::{to_levelled, to_levelled_with_bottom, LayeredCircuit};
pub use prob::{
    binomial, count_weight, exact_weight_probability, exact_weight_probability_restricted,
    mc_weight_probability, sample_weight_assignment, McEstimate, RevolvingDoor, EXACT_LIMIT,
};
pub use restrict::apply_restriction;
pub use stats::{circuit_stats, layered_stats, level1_gates, level1_kind, CircuitStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("malformed circuit: {0}")]
    Malformed(String),
    #[error("circuit dump line {line}: {message}")]
    Dump { line: usize, message: String },
    #[error("sentence is in the {found} vocabulary, compiler expects {expected}")]
    Vocabulary { expected: Vocabulary, found: Vocabulary },
    #[error("unexpected circuit shape: {0}")]
    Shape(String),
    #[error("exact enumeration needs {assignments} assignments (limit {EXACT_LIMIT}); use Monte Carlo")]
    TooLarge { assignments: u128 },
    #[error("weight {weight} is impossible with {inputs} inputs")]
    InvalidWeight { weight: usize, inputs: usize },
    #[error("at least one trial is required")]
    NoTrials,
}
