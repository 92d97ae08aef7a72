//! Random restrictions, level-1 survival statistics, decision-tree
//! inversion of depth-2 blocks, and the single-flip experiment for
//! shallow circuits.

mod config;
mod endgame;
mod pipeline;
mod sampler;
mod survey;
mod tree;

use thiserror::Error;

use crate::circuit::CircuitError;

pub use config::RestrictionConfig;
pub use endgame::{single_flip_sensitivity, FlipSensitivity};
pub use pipeline::{
    run_pipeline, switch_level_two, EquivalenceCheck, PipelineReport, SwitchCounts, EXHAUSTIVE_STARS,
    SAMPLED_COMPLETIONS,
};
pub use sampler::{extend_restriction_stars, extend_to_default, sample_balanced_restriction, PairingRestriction};
pub use survey::{level1_fanin_survey, or_gate_survival, FaninRow, FaninSurvey, GateSurvey, SurvivalEstimate};
pub use tree::{
    build_decision_tree, invert, tree_to_dual_form, DecisionTree, DepthTwo, TreeOutcome, MAX_TREE_VARIABLES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwitchingError {
    #[error("restriction samplers need an odd host size of at least 3, got {m}")]
    Host { m: usize },
    #[error("cannot leave {target} of {stars} stars by fixing pairs")]
    Parity { stars: usize, target: usize },
    #[error("target of {target} stars exceeds the {stars} available")]
    TargetExceeds { stars: usize, target: usize },
    #[error("unexpected circuit shape: {0}")]
    Shape(String),
    #[error("bottom fan-in {fanin} exceeds the limit {limit}")]
    Fanin { fanin: usize, limit: usize },
    #[error("{count} variables exceed the decision tree limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
