//! Reductions from multicolored k-Clique and bounded-occurrence 3-SAT into
//! pseudo-projection MaxCover, and parsers for their inputs.

mod clique;
mod parse;
mod sat;

pub use clique::{clique_to_maxcover, colorful_lift, CliqueInstance, Graph, PartitionedGraph};
pub use parse::{parse_dimacs_cnf, parse_edge_list, ParsedGraph};
pub use sat::{sat_to_maxcover, Cnf3, SatInstance};

use thiserror::Error;

use crate::maxcover::MaxCoverError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontendError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("clause {clause} has {width} literals, at most 3 allowed")]
    ClauseWidth { clause: usize, width: usize },
    #[error("variable {variable} occurs in {count} clauses, at most 3 allowed")]
    OccurrenceBound { variable: usize, count: usize },
    #[error("literal {literal} does not name one of {vars} variables")]
    LiteralRange { literal: i64, vars: usize },
    #[error("variable {0} occurs in no clause")]
    UnusedVariable(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (< {n})")]
    VertexRange { vertex: usize, n: usize },
    #[error("part {part} out of range (< {t})")]
    PartRange { part: usize, t: usize },
    #[error("vertex {0} has no part")]
    MissingPart(usize),
    #[error("part {part} is not independent: edge {u}-{v}")]
    PartNotIndependent { part: usize, u: usize, v: usize },
    #[error("need at least {min} parts, got {got}")]
    TooFewParts { min: usize, got: usize },
    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error(transparent)]
    MaxCover(#[from] MaxCoverError),
}

/// Output of a front-end: an instance, or a definite NO found while building it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrontEnd<T> {
    Instance(T),
    DecidedNo(String),
}

impl<T> FrontEnd<T> {
    pub fn instance(&self) -> Option<&T> {
        match self {
            FrontEnd::Instance(x) => Some(x),
            FrontEnd::DecidedNo(_) => None,
        }
    }
}
