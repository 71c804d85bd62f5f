//! k shortest simple paths on weighted directed multigraphs.
//!
//! Paths are represented as sidetrack sequences: a compact encoding that
//! stores, per candidate, only the last deviation edge, a parent pointer and
//! the shortest-path tree its suffix follows. Non-simple candidates are
//! repaired by recomputing a tree in the graph minus their prefix. Three
//! solver variants are provided: `Basic` (walk-based simplicity tests, no
//! tree reuse), `SbO` (tree cache plus block partition for constant-time
//! simplicity tests) and `SbR` (additionally prunes doomed candidates with
//! incremental reverse reachability).
//!
//! The crate also ships DIMACS `.gr` I/O, an sprand-style random instance
//! generator, and two independent reference oracles (exhaustive enumeration
//! and Yen's algorithm) used by the test suite and benchmark harness.

pub mod candidates;
pub mod dimacs;
pub mod graph;
pub mod heap;
pub mod marks;
pub mod oracle;
pub mod random;
pub mod solver;
pub mod sptree;

#[cfg(test)]
pub(crate) mod testutil;

pub use graph::{EdgeId, EdgeRecord, Graph, GraphError, NodeId};
pub use oracle::{enumerate_all_simple_paths, yen, yen_with_stats, PathList, YenStats};
pub use solver::{solve, solve_with, FoundPath, Query, RunStats, SolveError, SolverConfig, Variant};
pub use sptree::{compute_sp_tree, compute_sp_tree_excluding, SpTree, TreeId, TreeRegistry};
