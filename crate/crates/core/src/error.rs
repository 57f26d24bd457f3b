use thiserror::Error;

/// Errors raised while reading a graph in edge-list form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: missing or malformed header, expected \"n m\"")]
    BadHeader { line: usize },
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("graph has {n} vertices, at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("line {line}: malformed edge line, expected \"u v\"")]
    BadEdgeLine { line: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// Errors raised while reading a per-vertex constraint file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintFileError {
    #[error("line {line}: expected 9 integers \"v a_lo a_hi b_lo b_hi c_lo c_hi d_lo d_hi\"")]
    BadLine { line: usize },
    #[error("line {line}: vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: vertex {vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("vertex {vertex} has no constraint line")]
    MissingVertex { vertex: usize },
    #[error("line {line}: {source}")]
    Interval { line: usize, source: SpecError },
}

/// Invalid problem parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: i64, hi: i64 },
    #[error("interval [{lo}, {hi}] does not meet [0, {n}]")]
    IntervalOutOfRange { lo: i64, hi: i64, n: usize },
    #[error("d = {d} outside [0, {n}]")]
    DOutOfRange { d: i64, n: usize },
    #[error("size target {t} outside [1, {max}]")]
    SizeOutOfRange { t: usize, max: usize },
    #[error("expected {expected} per-vertex constraint entries, got {found}")]
    ConstraintCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("({0}) is not a proper bipartition of its half")]
    ImproperHalf(&'static str),
    #[error("size dimensions require a size target")]
    MissingSizeTarget,
}

/// Errors from the dominance index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vector of length {found} where dimension {expected} was expected")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate point id {0}")]
    DuplicateId(u64),
}

/// Errors from the solvers and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("n = {n} exceeds the configured limit of {limit} for this engine")]
    TooLarge { n: usize, limit: usize },
    #[error("estimated memory {estimate} bytes exceeds the budget of {budget} bytes")]
    MemoryBudget { estimate: u64, budget: u64 },
    #[error("vector dimension mismatch: expected {expected}, found {found}")]
    BoxDimension { expected: usize, found: usize },
    #[error("box is empty on coordinate {coord}: lo {lo} > hi {hi}")]
    EmptyBox { coord: usize, lo: i64, hi: i64 },
}
