//! All-pairs pipeline for arbitrarily weighted acyclic graphs: potential
//! computation in one topological pass, reweighting to non-negative
//! lengths, the improved all-pairs driver with the topological engine,
//! and un-shifting of the solved distances.

use thiserror::Error;

use crate::driver::{solve_apsp_observed, PhaseView, SolveError, Variant};
use crate::graph::{Graph, GraphError, VertexId};
use crate::result::ApspResult;
use crate::sssp::{kahn_order, SsspEngine};

#[derive(Debug, Error, PartialEq)]
pub enum DagError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("reweighted arc ({tail}, {head}) came out negative ({length}); potentials are inconsistent")]
    BadReweight { tail: VertexId, head: VertexId, length: f64 },
}

/// A topological order and its inverse: every arc goes from lower to
/// higher rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoOrder {
    pub order: Vec<VertexId>,
    pub rank: Vec<usize>,
}

/// Topological order of a graph, or a cycle witness.
pub fn topo_order(g: &Graph) -> Result<TopoOrder, GraphError> {
    let order = kahn_order(g).map_err(|cycle| GraphError::Cyclic { cycle })?;
    let mut rank = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    Ok(TopoOrder { order, rank })
}

/// Vertex potentials from a virtual source with zero-length arcs to every
/// vertex, computed by one relaxation pass in topological order, plus the
/// graph reweighted to `len + h(tail) - h(head)`, which is non-negative
/// and preserves shortest paths.
///
/// The virtual source is realized by starting every potential at zero
/// rather than by mutating the graph.
pub fn johnson_reweight(g: &Graph) -> Result<(Graph, Vec<f64>), DagError> {
    let topo = topo_order(g)?;
    let n = g.n();
    let mut h = vec![0.0; n];
    for &v in &topo.order {
        for &id in g.outgoing_arcs(v) {
            let arc = g.arc(id);
            let candidate = h[v] + arc.length;
            if candidate < h[arc.head] {
                h[arc.head] = candidate;
            }
        }
    }
    let raw: Vec<(usize, usize, f64)> = g
        .arcs()
        .iter()
        .map(|arc| {
            let length = arc.length + h[arc.tail] - h[arc.head];
            (arc.tail, arc.head, length)
        })
        .collect();
    if let Some(&(tail, head, length)) = raw.iter().find(|&&(_, _, len)| len < 0.0) {
        return Err(DagError::BadReweight { tail, head, length });
    }
    // Arc ids survive: the input had no loops or parallel arcs to clean up.
    let (reweighted, _) = Graph::build(n, &raw, false)?;
    debug_assert_eq!(reweighted.m(), g.m());
    Ok((reweighted, h))
}

/// Solves all-pairs shortest paths on an acyclic graph with arbitrary
/// weights: reweight, run the improved driver with the topological
/// engine, then shift distances back. The result keeps the potential
/// vector for auditing.
pub fn solve_dag_apsp(g: &Graph) -> Result<ApspResult, DagError> {
    solve_dag_apsp_with(g, SsspEngine::DagTopological, Variant::Improved, |_| {})
}

/// The acyclic pipeline with an explicit engine and variant. Any engine
/// works: after reweighting the auxiliary graphs are non-negative and
/// acyclic. The observer watches the driver phases on the reweighted
/// graph.
pub fn solve_dag_apsp_with(
    g: &Graph,
    engine: SsspEngine,
    variant: Variant,
    observe: impl FnMut(&PhaseView<'_>),
) -> Result<ApspResult, DagError> {
    let (reweighted, h) = johnson_reweight(g)?;
    let mut result = solve_apsp_observed(&reweighted, engine, variant, observe)?;
    for (u, row) in result.matrix.iter_mut().enumerate() {
        for (v, entry) in row.iter_mut().enumerate() {
            if entry.is_finite() {
                *entry = *entry - h[u] + h[v];
            }
        }
    }
    for (v, list) in result.lists.iter_mut().enumerate() {
        for (source, dist) in list.iter_mut() {
            *dist = *dist - h[*source] + h[v];
        }
    }
    result.potentials = Some(h);
    Ok(result)
}

/// True when the graph admits a topological order.
pub fn is_acyclic(g: &Graph) -> bool {
    kahn_order(g).is_ok()
}
