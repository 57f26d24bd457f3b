//! Exact solvers for degree-constrained graph cut problems.
//!
//! Supported problems are d-Cut, Internal Partition, (α, β)-Domination and
//! the per-vertex Interval-Constrained Cut that generalizes them. The
//! solver enumerates bipartitions of each half of the vertex set, encodes
//! them as small integer vectors and joins the halves through a dominance
//! range-counting index. Decision, counting, witness, fixed-size and
//! size-optimization modes are available, along with brute-force and
//! pairwise reference engines.
//!
//! Vertices are 0-based in memory and 1-based in text formats. Counts are
//! over ordered proper cuts: `(L, R)` and `(R, L)` are distinct.

pub mod boxsum;
pub mod encoder;
pub mod error;
pub mod graph;
pub mod index;
pub mod oracle;
pub mod problem;
pub mod solver;
pub mod validate;

pub use boxsum::{solve_vector_box_sum, BoxSumOptions};
pub use error::{ConstraintFileError, EncodeError, IndexError, ParseError, SolveError, SpecError};
pub use graph::{parse_graph, split_halves, Cut, Graph, VertexSet, MAX_VERTICES};
pub use index::{DominanceIndex, Engine as IndexEngine, IndexParams, PointSet, Vectors};
pub use oracle::{brute_force, naive_pair_join, OracleOptions, OracleResult};
pub use problem::{Interval, Mode, ProblemKind, ProblemSpec, VertexConstraints};
pub use solver::{
    construct_witness, count_solutions, optimize_size, solve, solve_with_size, Direction, SolveResult, SolveStats,
    SolverConfig, SolverEngine,
};
pub use validate::{validate_cut, Rule, Verdict};
