//! Single-source shortest path engines behind one black-box contract.
//!
//! Every engine is a pure function of a graph view and a source vertex:
//! repeated calls return identical outputs. The all-pairs driver never
//! looks inside an engine; it only reads the returned tree.

mod bellman_ford;
mod dag_topo;
mod dijkstra;

pub use bellman_ford::bellman_ford;
pub use dag_topo::dag_topo_sssp;
pub(crate) use dag_topo::kahn_order;
pub use dijkstra::dijkstra;

use thiserror::Error;

use crate::graph::{format_cycle, GraphView, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum SsspError {
    #[error("arc ({tail}, {head}) has negative length {length}, which this engine rejects")]
    NegativeArc { tail: VertexId, head: VertexId, length: f64 },
    #[error("negative cycle reachable from the source: {}", format_cycle(cycle))]
    NegativeCycle { cycle: Vec<VertexId> },
    #[error("graph contains a cycle: {}", format_cycle(cycle))]
    Cyclic { cycle: Vec<VertexId> },
    #[error("source vertex {0} out of range")]
    BadSource(VertexId),
}

/// Result of one single-source run: distances plus the shortest-path tree
/// and its depth-one reading.
///
/// Unreachable vertices have infinite distance and no parent or first hop.
/// For every reachable `v != source`, walking `parent` reaches the source
/// and summing arc lengths along the way reproduces `dist[v]` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SsspOutput {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    /// First vertex after the source on the shortest path to `v`; equals
    /// `v` itself when that path is the single arc from the source.
    pub first_hop: Vec<Option<VertexId>>,
}

impl SsspOutput {
    pub(crate) fn from_tree(dist: Vec<f64>, parent: Vec<Option<VertexId>>, source: VertexId) -> Self {
        let first_hop = first_hops(&parent, source);
        SsspOutput { dist, parent, first_hop }
    }
}

/// Depth-one ancestors below `source` for every vertex of a shortest-path
/// tree. Unreachable vertices and the source itself map to `None`.
pub fn first_hops(parent: &[Option<VertexId>], source: VertexId) -> Vec<Option<VertexId>> {
    let n = parent.len();
    let mut hop: Vec<Option<VertexId>> = vec![None; n];
    let mut chain = Vec::new();
    for v in 0..n {
        if v == source || hop[v].is_some() || parent[v].is_none() {
            continue;
        }
        chain.clear();
        chain.push(v);
        let mut cur = v;
        let resolved = loop {
            assert!(chain.len() <= n, "malformed parent tree: cycle through {cur}");
            let p = parent[cur].expect("malformed parent tree: broken chain");
            if p == source {
                break cur;
            }
            if let Some(h) = hop[p] {
                break h;
            }
            chain.push(p);
            cur = p;
        };
        for &x in &chain {
            hop[x] = Some(resolved);
        }
    }
    hop
}

/// Input class an engine is able to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputRequirement {
    NonNegativeWeights,
    AcyclicGraph,
    AnyWeights,
}

/// A named, stateless solving capability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsspEngine {
    Dijkstra,
    DagTopological,
    BellmanFord,
}

impl SsspEngine {
    pub const ALL: [SsspEngine; 3] =
        [SsspEngine::Dijkstra, SsspEngine::DagTopological, SsspEngine::BellmanFord];

    pub fn name(self) -> &'static str {
        match self {
            SsspEngine::Dijkstra => "dijkstra",
            SsspEngine::DagTopological => "dag",
            SsspEngine::BellmanFord => "bellman-ford",
        }
    }

    pub fn from_name(name: &str) -> Option<SsspEngine> {
        Self::ALL.iter().copied().find(|e| e.name() == name)
    }

    pub fn requirement(self) -> InputRequirement {
        match self {
            SsspEngine::Dijkstra => InputRequirement::NonNegativeWeights,
            SsspEngine::DagTopological => InputRequirement::AcyclicGraph,
            SsspEngine::BellmanFord => InputRequirement::AnyWeights,
        }
    }

    pub fn solve(self, view: &impl GraphView, source: VertexId) -> Result<SsspOutput, SsspError> {
        if source >= view.vertex_count() {
            return Err(SsspError::BadSource(source));
        }
        match self {
            SsspEngine::Dijkstra => dijkstra(view, source),
            SsspEngine::DagTopological => dag_topo_sssp(view, source),
            SsspEngine::BellmanFord => bellman_ford(view, source),
        }
    }
}

impl std::fmt::Display for SsspEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
