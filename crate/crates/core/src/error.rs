use thiserror::Error;

use crate::digraph::{Edge, FreenessWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {edge:?} has an endpoint outside 0..{n}")]
    VertexOutOfRange { edge: Edge, n: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    SubsetOutOfRange { vertex: usize, n: usize },
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("graph is not 3-free: {0}")]
    NotThreeFree(FreenessWitness),
    #[error("parts do not partition the vertex set: {0}")]
    NotAPartition(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("circulant on {n} vertices needs a nonempty step set inside 1..={max}, got {steps:?}")]
    CirculantSteps { n: usize, steps: Vec<usize>, max: usize },
    #[error("cycle blow-up needs at least 4 parts, got {0}")]
    TooFewParts(usize),
    #[error("cycle blow-up part {0} is empty")]
    EmptyPart(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("bad family spec: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{method} handles at most {max} vertices, got {n}")]
    TooLarge { method: &'static str, n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MuError {
    #[error("mu = {0} is negative")]
    Negative(f64),
    #[error("mu = {0} violates {1}")]
    Infeasible(f64, &'static str),
    #[error("bad bisection bracket [{lo}, {hi}]: {reason}")]
    Bracket { lo: f64, hi: f64, reason: &'static str },
    #[error("x = {0} is outside [0, 1/4]")]
    OutOfRange(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecycleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Mu(#[from] MuError),
}
