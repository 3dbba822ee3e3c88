use thiserror::Error;

use crate::netmodel::{EdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge {index} has non-positive or non-finite length {length}")]
    NonPositiveLength { index: usize, length: f64 },
    #[error("network is disconnected: vertex {0} is unreachable from vertex 0")]
    DisconnectedNetwork(usize),
    #[error("vertex {vertex} out of range for a network with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edge {edge} out of range for a network with {count} edges")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("a network needs at least one vertex")]
    EmptyNetwork,
    #[error("endpoints must be distinct, got {0} twice")]
    SameVertex(VertexId),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("no cost given for arc {0}")]
    MissingArcCost(String),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    EdgeNotIncident { vertex: VertexId, edge: EdgeId },
    #[error("vertex {0} has no incident edges; the walk cannot move")]
    Stuck(VertexId),
    #[error("walk exceeded its budget of {0} steps")]
    StepBudgetExceeded(u64),
    #[error("trial {trial} failed: {source}")]
    TrialFailed {
        trial: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid stopping rule: {0}")]
    InvalidRule(String),
    #[error("invalid closed walk: {0}")]
    InvalidWalk(String),
    #[error("need at least {needed} trials, got {got}")]
    TooFewTrials { needed: u64, got: u64 },
    #[error("no records to aggregate")]
    EmptyInput,
    #[error("binary tree depth must be at least 1, got {0}")]
    InvalidDepth(u32),
    #[error("lollipop needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
    #[error("state space too large for exact solve: {0}")]
    TooLarge(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad generator spec `{spec}`: {message}")]
    BadGenerator { spec: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
