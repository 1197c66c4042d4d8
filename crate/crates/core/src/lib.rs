//! Exact r- and (r,s)-robustness of simple digraphs.
//!
//! The robustness values are computed by mixed-integer linear programs
//! built from the graph Laplacian ([`model`]) and solved by an in-crate
//! branch-and-bound solver over exact rationals ([`solver`]). The
//! exhaustive algorithms in [`oracle`] compute the same quantities by brute
//! force and serve as ground truth for small graphs.

pub mod enumerate;
pub mod gen;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod robustness;
pub mod solver;

pub use enumerate::{count_pairs, enumerate_bipartitions, enumerate_pairs};
pub use gen::{generate, random_out_tree, Family, GenError, GenSpec};
pub use graph::{Digraph, GraphError, Laplacian, VertexSubset, MAX_VERTICES};
pub use model::{BigM, MilpProblem, ModelError, ModelKind, ModelMeta};
pub use oracle::RobustnessPair;
pub use robustness::{AnalyzeOptions, Certificate, Estimate, Method, RobustnessError, RobustnessReport};
pub use solver::{Progress, Rational, SolveConfig, SolveError, SolveResult, SolveStatus};
