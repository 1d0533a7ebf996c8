//! Degree Ramsey numbers of small graphs: exact arrowing decisions on
//! concrete hosts, the constructions behind the known upper and lower
//! bounds, and exact evaluation of the bounds themselves.

pub mod arrowing;
pub mod bounds;
pub mod construct;
pub mod format;
pub mod graph;
pub mod pattern;
pub mod patterns;
pub mod pipelines;
pub mod rng;

pub use arrowing::{
    decide_arrowing, decide_arrowing_parallel, verify_coloring, ArrowVerdict, SearchBudget,
};
pub use graph::{EdgeColoring, Graph, GraphError};
pub use pattern::{parse_pattern, PatternSpec};
