//! Crate-wide error type.
//!
//! Variants are grouped by the stage that raises them. [`Error::kind`] gives a
//! stable identifier used in machine-readable diagnostics, and
//! [`Error::exit_code`] maps each group onto the command-line exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // --- input / structure -------------------------------------------------
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("hypergraph has no vertices")]
    EmptyVertexSet,
    #[error("empty label")]
    EmptyLabel,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate hyperedge id `{0}`")]
    DuplicateEdgeId(String),
    #[error("hyperedge `{0}` has no members")]
    EmptyEdge(String),
    #[error("hyperedge `{edge}` lists vertex `{vertex}` more than once")]
    RepeatedMember { edge: String, vertex: String },
    #[error("hyperedge `{0}` is a loop (a single vertex)")]
    LoopEdge(String),
    #[error("hyperedges `{0}` and `{1}` have identical member sets")]
    DuplicateEdge(String, String),
    #[error("hyperedge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertexInEdge { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown hyperedge `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{0}` belongs to no hyperedge")]
    IsolatedVertex(String),
    #[error("hypergraph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("weight of {target} must be positive and finite, got {value}")]
    NonPositiveWeight { target: String, value: f64 },
    #[error("unknown weight preset `{0}`")]
    UnknownWeightPreset(String),
    #[error("function has {found} entries, expected {expected}")]
    DomainMismatch { expected: usize, found: usize },

    // --- structural hypotheses ----------------------------------------------
    #[error("unit {0:?} is a singleton; T_U is trivial")]
    SingletonUnit(Vec<String>),
    #[error("vertex weight is not constant on {0:?}")]
    NonConstantVertexWeight(Vec<String>),
    #[error(
        "vertex weight is not constant on unit {0:?}; contracted vertex weight is ill-defined"
    )]
    InconsistentVertexWeight(Vec<String>),
    #[error("canonical bijection between {0:?} and {1:?} does not preserve sigma")]
    NotSigmaPreserving(Vec<String>, Vec<String>),
    #[error("sigma is not constant on the generating sets of {0:?} and {1:?}")]
    NonConstantSigma(Vec<String>, Vec<String>),
    #[error("edges `{0}` and `{1}` of one generating set share a residue; no canonical bijection")]
    NoCanonicalBijection(String, String),
    #[error("twin relation is not transitive: units {0:?} and {1:?} share a class but are not sigma-preserving twins")]
    NonTransitiveTwinRelation(Vec<String>, Vec<String>),
    #[error("cluster hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("contraction hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("cluster {0:?} has fewer than two vertices")]
    ClusterTooSmall(Vec<String>),

    // --- numerics ------------------------------------------------------------
    #[error("eigensolver failure: {0}")]
    EigensolverFailure(String),
    #[error("state left the dynamics interval at t={time}: vertex `{vertex}` = {value}")]
    StateOutOfInterval {
        time: f64,
        vertex: String,
        value: f64,
    },
    #[error("numeric overflow at t={0}")]
    NumericOverflow(f64),
    #[error("trajectories do not share a time grid")]
    TimeGridMismatch,
    #[error("cluster is not synchronized at t={time} (spread {spread:e})")]
    NotSynchronized { time: f64, spread: f64 },
    #[error("assembled spectrum differs from direct spectrum: {0}")]
    SpectrumMismatch(String),

    // --- usage ---------------------------------------------------------------
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable identifier, equal to the variant name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Io { .. } => "IoError",
            Error::EmptyVertexSet => "EmptyVertexSet",
            Error::EmptyLabel => "EmptyLabel",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::DuplicateEdgeId(_) => "DuplicateEdgeId",
            Error::EmptyEdge(_) => "EmptyEdge",
            Error::RepeatedMember { .. } => "RepeatedMember",
            Error::LoopEdge(_) => "LoopEdge",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::UnknownVertexInEdge { .. } => "UnknownVertexInEdge",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::IsolatedVertex(_) => "IsolatedVertex",
            Error::Disconnected { .. } => "Disconnected",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::UnknownWeightPreset(_) => "UnknownWeightPreset",
            Error::DomainMismatch { .. } => "DomainMismatch",
            Error::SingletonUnit(_) => "SingletonUnit",
            Error::NonConstantVertexWeight(_) => "NonConstantVertexWeight",
            Error::InconsistentVertexWeight(_) => "InconsistentVertexWeight",
            Error::NotSigmaPreserving(..) => "NotSigmaPreserving",
            Error::NonConstantSigma(..) => "NonConstantSigma",
            Error::NoCanonicalBijection(..) => "NoCanonicalBijection",
            Error::NonTransitiveTwinRelation(..) => "NonTransitiveTwinRelation",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::HypothesesNotMet(_) => "HypothesesNotMet",
            Error::ClusterTooSmall(_) => "ClusterTooSmall",
            Error::EigensolverFailure(_) => "EigensolverFailure",
            Error::StateOutOfInterval { .. } => "StateOutOfInterval",
            Error::NumericOverflow(_) => "NumericOverflow",
            Error::TimeGridMismatch => "TimeGridMismatch",
            Error::NotSynchronized { .. } => "NotSynchronized",
            Error::SpectrumMismatch(_) => "SpectrumMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }

    /// 2 input/structure, 3 numeric failure, 4 hypotheses not met, 64 usage.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EigensolverFailure(_)
            | Error::StateOutOfInterval { .. }
            | Error::NumericOverflow(_)
            | Error::TimeGridMismatch
            | Error::NotSynchronized { .. }
            | Error::SpectrumMismatch(_) => 3,
            Error::SingletonUnit(_)
            | Error::NonConstantVertexWeight(_)
            | Error::InconsistentVertexWeight(_)
            | Error::NotSigmaPreserving(..)
            | Error::NonConstantSigma(..)
            | Error::NoCanonicalBijection(..)
            | Error::NonTransitiveTwinRelation(..)
            | Error::HypothesisViolated(_)
            | Error::HypothesesNotMet(_) => 4,
            Error::InvalidParameter(_) => 64,
            _ => 2,
        }
    }
}
