use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("size guard: {what} limited to {limit}, got {got}")]
    SizeGuard { what: &'static str, limit: usize, got: usize },
    #[error("work budget exceeded: {0} (use --force to run anyway)")]
    Budget(String),
    #[error("vertex {0} is not red")]
    NotRed(usize),
    #[error("edge {0}-{1} is not a red-green edge")]
    NotRedGreen(usize, usize),
    #[error("disallowed jump of {u} over {v}: {reason}")]
    DisallowedJump { u: usize, v: usize, reason: String },
    #[error("matching is not maximum: size {got}, expected {expected}")]
    NotMaximum { got: usize, expected: usize },
    #[error("phi assignment: {0}")]
    Phi(String),
    #[error("inconsistent mode: {0}")]
    InconsistentMode(String),
    #[error("polynomial division not exact: {0}")]
    InexactDivision(String),
    #[error("parameter value must be nonzero (vertex {0})")]
    ZeroAlpha(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
