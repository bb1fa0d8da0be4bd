use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a tree on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("edge list does not describe a tree: {0}")]
    NotATree(String),

    #[error("boundary must be a nonempty proper subset of the vertices")]
    InvalidBoundary,

    #[error("interior is empty")]
    EmptyInterior,

    #[error("interior does not induce a connected subgraph")]
    DisconnectedInterior,

    #[error("eigensolver did not reach residual {tol:e} (best {residual:e})")]
    NoConvergence { tol: f64, residual: f64 },

    #[error("first eigenvector has a non-positive entry ({0:e})")]
    NonPositiveEigenvector(f64),

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("function has {got} entries but the interior has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("path on {0} vertices has no interior with leaf boundary")]
    TooSmall(usize),

    #[error("invalid demotion: {0}")]
    InvalidDemotion(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid pendant choice: {0}")]
    InvalidChoice(String),

    #[error("rewrite precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("rewrite produced a graph that is not a tree")]
    ResultNotTree,

    #[error("class {0} contains no tree")]
    EmptyClass(String),

    #[error("order {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
