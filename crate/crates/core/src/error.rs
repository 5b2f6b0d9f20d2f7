use thiserror::Error;

use crate::geom::Space;

/// Errors produced by the geometry kernel, graph builders, generators and file codecs.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate pair: points {0:?} and {1:?} coincide within tolerance")]
    DegeneratePair([f64; 3], [f64; 3]),

    #[error("antipodal pair: {0:?} and {1:?} span no unique minor arc")]
    AntipodalPair([f64; 3], [f64; 3]),

    #[error("arcs lie on a common great circle and overlap")]
    CollinearArcs,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("operation requires space {expected:?}, got {got:?}")]
    WrongSpace { expected: Space, got: Space },

    #[error("invalid point #{index}: {reason}")]
    InvalidPoint { index: usize, reason: String },

    #[error("points #{0} and #{1} coincide within tolerance")]
    DuplicatePoint(usize, usize),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("degenerate hull: {0}")]
    DegenerateHull(String),

    #[error("crossing relation is not an equivalence: {0}")]
    NotAnEquivalence(String),

    #[error("reduced graph invariant violated: {0}")]
    ReductionInvariantViolated(String),

    #[error("embedding error: {0}")]
    EmbeddingError(String),

    #[error("direct count {direct} disagrees with lifted count {lifted}: {detail}")]
    LiftMismatch {
        direct: usize,
        lifted: usize,
        detail: String,
    },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("duplicate angle {0} (angles must be distinct modulo pi)")]
    DuplicateAngle(f64),

    #[error("infeasible side length: {0}")]
    InfeasibleSideLength(String),

    #[error("the Delaunay tiling has no triangular face")]
    NoTriangularFace,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
