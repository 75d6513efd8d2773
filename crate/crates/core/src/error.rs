use thiserror::Error;

use crate::graph::Mode;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cut side is empty")]
    EmptySide,
    #[error("source and sink are the same vertex")]
    SameVertex,
    #[error("edge {0} -> {1} exists, so no vertex cut separates them")]
    NoVertexCut(usize, usize),
    #[error("nu = {nu} is outside [1, {m}]")]
    BadNu { nu: u64, m: usize },
    #[error("terminal set is empty")]
    EmptyTerminals,
    #[error("no vertex is eligible as a terminal")]
    NoEligibleTerminal,
    #[error("sparsifier above level 1 needs a parent bundle")]
    MissingParent,
    #[error("graph has a single vertex, which is the root")]
    RootOnly,
    #[error("no vertex cut with the root on the sink side exists")]
    NoFeasibleCut,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("precondition \"not a complete graph\" violated")]
    CompleteGraph,
    #[error("far-away set of vertex {0} is empty")]
    EmptyFarSet(usize),
    #[error("graph has {n} vertices, brute force handles at most {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("no feasible cut exists")]
    NoFeasible,
    #[error("vertex {0} lies outside the completion universe")]
    OutOfUniverse(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("weight {weight} out of range{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    WeightOutOfRange { weight: u64, line: Option<usize> },
    #[error("self-loop at vertex {vertex}{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    SelfLoop { vertex: usize, line: Option<usize> },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph size exceeds the supported limit")]
    GraphTooLarge,
    #[error("operation needs a {0:?} graph")]
    WrongMode(Mode),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("invalid epsilon: {0}")]
    BadEpsilon(String),
    #[error("invalid injected estimates: {0}")]
    BadInjection(String),
    #[error("arithmetic overflow while scaling capacities")]
    Overflow,
    #[error("missing argument: {0}")]
    MissingArgument(&'static str),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Errors caused by an input that violates a mathematical precondition
    /// rather than by malformed input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::CompleteGraph
                | Error::NoFeasibleCut
                | Error::NoFeasible
                | Error::RootOnly
                | Error::TooSmall
                | Error::NoVertexCut(..)
                | Error::NoEligibleTerminal
        )
    }
}
