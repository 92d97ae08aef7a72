//! Experiments: direct and coupled estimates of `f_A(n)`, size scans, and
//! restriction runs, reported as CSV rows.

mod couple;
mod estimate;
mod report;
mod restrict;
mod scan;
pub mod suite;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::CircuitError;
use crate::logic::{ParseError, Sentence, Vocabulary};
use crate::models::ModelError;
use crate::semantics::SemanticsError;
use crate::switching::SwitchingError;

pub use couple::{
    coupled_g, coupling_identity_check, sample_host, CoupledG, CouplingPoint, CouplingReport, CouplingSpec, Host,
    SubsetMode, MAX_REJECTIONS,
};
pub use estimate::{estimate_f, exact_f_function, exact_f_graph, EXACT_FUNCTION_TABLES, EXACT_GRAPH_PAIRS};
pub use report::{csv_string, emit_csv, write_csv, EstimateRow, Quantity, CSV_HEADER};
pub use restrict::{restriction_experiment, RestrictReport};
pub use scan::{delta_scan, ScanReport, SCAN_FOOTER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Graph,
    Function,
}

impl ModelKind {
    pub fn vocabulary(self) -> Vocabulary {
        match self {
            ModelKind::Graph => Vocabulary::GraphOrder,
            ModelKind::Function => Vocabulary::BinaryFunction,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Graph => "graph",
            ModelKind::Function => "func",
        })
    }
}

impl FromStr for ModelKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph" => Ok(ModelKind::Graph),
            "func" | "function" => Ok(ModelKind::Function),
            _ => Err(HarnessError::Invalid(format!("unknown model `{s}`"))),
        }
    }
}

/// Which random structure an experiment samples. `p` is the edge
/// probability and is ignored for functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub p: f64,
}

impl ModelSpec {
    pub fn graph(p: f64) -> ModelSpec {
        assert!((0.0..=1.0).contains(&p), "edge probability {p}");
        ModelSpec { kind: ModelKind::Graph, p }
    }

    pub fn function() -> ModelSpec {
        ModelSpec {
            kind: ModelKind::Function,
            p: 0.5,
        }
    }

    pub fn of_kind(kind: ModelKind) -> ModelSpec {
        match kind {
            ModelKind::Graph => ModelSpec::graph(0.5),
            ModelKind::Function => ModelSpec::function(),
        }
    }

    pub fn check(&self, s: &Sentence) -> Result<(), HarnessError> {
        if s.vocabulary() == self.kind.vocabulary() {
            Ok(())
        } else {
            Err(HarnessError::ModelMismatch {
                model: self.kind,
                vocabulary: s.vocabulary(),
            })
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Switching(#[from] SwitchingError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{model} model cannot evaluate a sentence in the {vocabulary} vocabulary")]
    ModelMismatch { model: ModelKind, vocabulary: Vocabulary },
    #[error("no {i}-subset of [{m}] gave a totally defined projection")]
    NoDefinedSubset { m: usize, i: usize },
    #[error("infeasible exact computation: {0}")]
    Infeasible(String),
    #[error("{0}")]
    Invalid(String),
}

impl HarnessError {
    /// True when an exact computation was refused for size.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            HarnessError::Infeasible(_)
                | HarnessError::Circuit(CircuitError::TooLarge { .. })
                | HarnessError::Semantics(SemanticsError::TooLarge { .. })
        )
    }
}
