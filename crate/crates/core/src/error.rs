use thiserror::Error;

use crate::poly::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division in {context}: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        context: &'static str,
        numerator: String,
        denominator: String,
    },
    #[error("no value assigned to variable {0}")]
    UnassignedVariable(VarId),
    #[error("polynomial parse error at byte {position}: {message}")]
    PolyParse { position: usize, message: String },
    #[error("graph parse error at line {line}, column {column}: {message}")]
    GraphParse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph is invalid: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),
    #[error("walks cannot be joined: first ends at {end}, second starts at {start}")]
    WalkEndpointMismatch { end: usize, start: usize },
    #[error("involution is undefined on a GOOD pair")]
    GoodPair,
    #[error("weight of edge {from}->{to} with color {color} is not an integer constant")]
    SymbolicWeight {
        from: usize,
        to: usize,
        color: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
