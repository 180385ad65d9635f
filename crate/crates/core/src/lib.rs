//! Certifying forest decompositions of multigraphs.
//!
//! [`decompose`] splits the edges of a graph into `r` forests whenever
//! `e(X) <= r(|X| - 1)` holds for every nonempty vertex set `X`, and
//! otherwise returns a [`Certificate`]: a set `X` breaking that bound.
//! [`arboricity`] finds the least such `r`, and [`preassign`] rearranges a
//! decomposition so that `r` chosen edges sit in `r` chosen forests.
//! [`oracle`] holds exhaustive checkers for small graphs.

pub mod cli;
pub mod decompose;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod preassign;
mod union_find;

pub use decompose::{
    arboricity, classify_subtrees, decompose, decompose_traced, find_deficient_forest, insert_edge, ArboricityError,
    ArboricityReport, Certificate, ClassifyError, DecomposeError, Decomposition, ExchangeTrace, ForestIndex,
    InsertTrace, Insertion, PartialDecomposition, SubtreeClass, Verdict,
};
pub use graph::{
    components, is_forest, path_in_forest, restriction_edge_count, Components, EdgeId, EdgeSubset, Graph, GraphError,
    VertexId, VertexSet,
};
pub use preassign::{preassign, PinList, PreassignError};
