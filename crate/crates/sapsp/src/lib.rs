//! All-pairs shortest paths from any single-source solver.
//!
//! The driver treats a single-source shortest path routine as a black
//! box: each of its n-1 phases encodes every vertex's best candidate
//! path as one arc out of a hub vertex, solves single-source from the
//! hub on that small auxiliary graph, and appends the results to
//! per-vertex lists that come out sorted by distance. Arcs confirmed as
//! shortest paths are promoted into the auxiliary graph, which therefore
//! never holds more than (essential arcs + n) arcs. An improved cursor
//! schedule defers arcs in per-vertex sorted order so the number of live
//! cursors stays within the same bound.
//!
//! On acyclic inputs a potential-based reweighting makes arbitrary
//! weights non-negative in one topological pass, after which the same
//! driver runs with a linear-time topological engine.
//!
//! The [`oracle`] module provides an independent cubic ground truth and
//! validators; [`bench`] sweeps graph families while recording operation
//! counters.

pub mod bench;
pub mod counters;
pub mod dag;
pub mod dimacs;
pub mod driver;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod result;
pub mod sssp;

pub use counters::RunCounters;
pub use dag::{is_acyclic, johnson_reweight, solve_dag_apsp, solve_dag_apsp_with, topo_order, DagError, TopoOrder};
pub use dimacs::{parse_graph_file, write_graph_file};
pub use driver::{
    improved::{build_sorted_incidence, ActiveCursorSet, Resolution, SortedIncidence},
    normalize_ties, solve_apsp, solve_apsp_observed, ApspState, BestChoice, PathEntry, PhaseView,
    ShortestPathList, SolveError, Variant,
};
pub use generate::{gen_complete_digraph, gen_cycle_digraph, gen_random_dag, gen_random_digraph};
pub use graph::{Arc, ArcId, BuildReport, Graph, GraphError, GraphView, VertexId};
pub use oracle::{
    essential_edges, floyd_warshall, verify_counters, verify_matrix, verify_sorted_lists,
    OracleError, Tolerance, VerificationReport, Violation,
};
pub use result::ApspResult;
pub use sssp::{
    bellman_ford, dag_topo_sssp, dijkstra, first_hops, InputRequirement, SsspEngine, SsspError,
    SsspOutput,
};
