//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the polynomial has no nonzero terms")]
    ZeroPolynomial,

    #[error("{operation} is only implemented for dimension {supported}, got {dim}")]
    UnsupportedDimension {
        operation: &'static str,
        supported: &'static str,
        dim: usize,
    },

    #[error("lifting is not defined at exponent {point:?}")]
    MissingLifting { point: Vec<i64> },

    #[error("lifting point {point:?} is not a lattice point of the polytope")]
    LiftingOutsidePolytope { point: Vec<i64> },

    #[error("lifting support is missing polytope vertex {vertex:?}")]
    MissingVertex { vertex: Vec<i64> },

    #[error("the polytope is not full-dimensional")]
    DegeneratePolytope,

    #[error("cell {cell:?} is not a simplex")]
    NonSimplicialCell { cell: Vec<Vec<i64>> },

    #[error("cone {generators:?} is not smooth")]
    NonSmoothCone { generators: Vec<Vec<i64>> },

    #[error("cone index {index} out of range (fan has {count} maximal cones)")]
    UnknownCone { index: usize, count: usize },

    #[error("amoeba complement has {found} resolved components, expected {expected}")]
    UnresolvedComponents { found: usize, expected: usize },

    #[error("roots have equal moduli: {first} and {second}")]
    EqualModulusRoots { first: f64, second: f64 },

    #[error("expected {expected} root moduli, got {found}")]
    RootCountMismatch { expected: usize, found: usize },

    #[error("root moduli must be finite and positive, got {value}")]
    InvalidModulus { value: f64 },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("a torus coordinate is zero")]
    ZeroCoordinate,

    #[error("point is off the hypersurface (residual {residual:e})")]
    OffHypersurface { residual: f64 },

    #[error("point lies on a singular fiber (rank {rank} < {expected})")]
    SingularFiber { rank: usize, expected: usize },

    #[error("index {index} out of range for {len} walls")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("chamber labels {alpha:?} and {beta:?} are not adjacent")]
    NonAdjacentLabels { alpha: Vec<i64>, beta: Vec<i64> },

    #[error("chart mismatch: expected source {expected}, found {found}")]
    ChartMismatch { expected: String, found: String },

    #[error("gluing loop is not closed: starts at {start}, ends at {end}")]
    OpenLoop { start: String, end: String },

    #[error("empty gluing loop")]
    EmptyLoop,

    #[error("gluing is not invertible: monomial part has determinant {det}")]
    NotInvertible { det: i64 },

    #[error("non-finite evaluation at {point:?}")]
    NonFiniteEvaluation { point: Vec<f64> },

    #[error("path vertex {index} lies on the cut")]
    VertexOnCut { index: usize },

    #[error("path passes through {point}")]
    PathThroughPoint { point: String },

    #[error("degenerate intersection with the cut at path segment {segment}")]
    DegenerateIntersection { segment: usize },

    #[error("expected {expected} wall values, got {found}")]
    WallCountMismatch { expected: usize, found: usize },

    #[error("invalid tropical section: {constraint} violated at {location}")]
    InvalidSection { constraint: String, location: String },

    #[error("internal inconsistency: cocycle condition fails on {location}")]
    CocycleFailure { location: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
