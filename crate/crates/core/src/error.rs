use thiserror::Error;

use crate::hamilton::CycleViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex count n = {n}: {reason}")]
    InvalidOrder { n: usize, reason: &'static str },

    #[error("colour {colour} out of range (colour_count = {colour_count})")]
    ColourOutOfRange { colour: u32, colour_count: u32 },

    #[error("vertex {vertex} is not in 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("colouring is not proper: colour {colour} appears twice at vertex {vertex}")]
    Improper { vertex: usize, colour: u32 },

    #[error("vertex {vertex} does not miss exactly one colour")]
    MissingColourUndefined { vertex: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("colour class {colour} is not a perfect matching")]
    NotPerfectMatching { colour: u32 },

    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("graph is not {expected}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("spectral routes disagree: max_(i>=2)|eig(A)| = {sorted}, ||A - (d/n)J|| = {deflated}")]
    IdentityMismatch { sorted: f64, deflated: f64 },

    #[error("{quantity} is undefined for n = {n}")]
    Domain { quantity: &'static str, n: usize },

    #[error("tail parameter t = {t} is outside (0, 1/2)")]
    TailParameter { t: f64 },

    #[error("{what}: n = {n} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid cycle: {0}")]
    Cycle(#[from] CycleViolation),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
