//! Immutable weighted directed graph with incoming- and outgoing-adjacency
//! access, shared by every solver in the crate.

use thiserror::Error;

/// Vertex index in `[0, n)`.
pub type VertexId = usize;

/// Stable index into a graph's arc list.
pub type ArcId = usize;

/// A directed arc with a finite length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub length: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("arc ({tail}, {head}) endpoint out of range for n={n}")]
    EndpointOutOfRange { tail: usize, head: usize, n: usize },
    #[error("arc ({tail}, {head}) has negative length {length} but negatives are not allowed")]
    NegativeLength { tail: usize, head: usize, length: f64 },
    #[error("arc ({tail}, {head}) has non-finite length")]
    NonFiniteLength { tail: usize, head: usize },
    #[error("requested {m} arcs but at most {max} are possible")]
    TooManyArcs { m: usize, max: usize },
    #[error("requested {m} arcs but at least {min} are required")]
    TooFewArcs { m: usize, min: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph contains a cycle: {}", format_cycle(cycle))]
    Cyclic { cycle: Vec<VertexId> },
}

pub(crate) fn format_cycle(cycle: &[VertexId]) -> String {
    let mut s = String::new();
    for v in cycle {
        s.push_str(&format!("{} -> ", v + 1));
    }
    s.push_str(&format!("{}", cycle.first().map_or(0, |v| v + 1)));
    s
}

/// What `Graph::build` dropped or merged while validating the arc list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub parallel_merged: usize,
}

/// Immutable directed graph with non-negative (or, when built with
/// `allow_negative`, arbitrary finite) arc lengths.
///
/// Construction enforces: no self-loops, at most one arc per ordered
/// `(tail, head)` pair (duplicates keep the minimum length), and all
/// lengths finite. Absent arcs are conceptually infinite; an explicit
/// infinite length never appears in the arc list.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    arcs: Vec<Arc>,
    incoming: Vec<Vec<ArcId>>,
    outgoing: Vec<Vec<ArcId>>,
    allows_negative: bool,
}

impl Graph {
    /// Validates and builds a graph from raw `(tail, head, length)` triples.
    ///
    /// Self-loops are dropped and parallel arcs are merged keeping the
    /// minimum length; the report carries both counts.
    pub fn build(
        n: usize,
        raw: &[(usize, usize, f64)],
        allow_negative: bool,
    ) -> Result<(Graph, BuildReport), GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut report = BuildReport::default();
        let mut arcs: Vec<Arc> = Vec::with_capacity(raw.len());
        let mut seen = std::collections::HashMap::new();
        for &(tail, head, length) in raw {
            if tail >= n || head >= n {
                return Err(GraphError::EndpointOutOfRange { tail, head, n });
            }
            if !length.is_finite() {
                return Err(GraphError::NonFiniteLength { tail, head });
            }
            if length < 0.0 && !allow_negative {
                return Err(GraphError::NegativeLength { tail, head, length });
            }
            if tail == head {
                report.self_loops_dropped += 1;
                continue;
            }
            // +0.0 and -0.0 compare equal but differ under total orders.
            let length = if length == 0.0 { 0.0 } else { length };
            match seen.entry((tail, head)) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(arcs.len());
                    arcs.push(Arc { tail, head, length });
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    report.parallel_merged += 1;
                    let existing = &mut arcs[*e.get()];
                    if length < existing.length {
                        existing.length = length;
                    }
                }
            }
        }
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (id, arc) in arcs.iter().enumerate() {
            incoming[arc.head].push(id);
            outgoing[arc.tail].push(id);
        }
        let allows_negative = allow_negative;
        Ok((
            Graph {
                n,
                arcs,
                incoming,
                outgoing,
                allows_negative,
            },
            report,
        ))
    }

    /// Builds a graph, discarding the report. Panics on invalid input;
    /// intended for fixtures and tests.
    pub fn from_arcs(n: usize, raw: &[(usize, usize, f64)], allow_negative: bool) -> Graph {
        Graph::build(n, raw, allow_negative).expect("invalid fixture graph").0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    /// Arcs with head `v`, in insertion order.
    pub fn incoming_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.incoming[v]
    }

    /// Arcs with tail `v`, in insertion order.
    pub fn outgoing_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.outgoing[v]
    }

    pub fn allows_negative(&self) -> bool {
        self.allows_negative
    }

    pub fn has_negative(&self) -> bool {
        self.arcs.iter().any(|a| a.length < 0.0)
    }

    /// True when every arc length is integer-valued, in which case all
    /// distance arithmetic in this crate is exact.
    pub fn integer_weighted(&self) -> bool {
        self.arcs.iter().all(|a| a.length.fract() == 0.0)
    }
}

/// Read-only adjacency view consumed by the SSSP engines.
///
/// The driver solves on an auxiliary graph that is not materialized as a
/// `Graph`; engines only ever need outgoing iteration, so they take this
/// view instead of the concrete type.
pub trait GraphView {
    fn vertex_count(&self) -> usize;

    /// Calls `f(head, length)` for every arc leaving `v`.
    fn for_each_out(&self, v: VertexId, f: impl FnMut(VertexId, f64));

    fn arc_count(&self) -> usize {
        let mut m = 0;
        for v in 0..self.vertex_count() {
            self.for_each_out(v, |_, _| m += 1);
        }
        m
    }
}

impl GraphView for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn for_each_out(&self, v: VertexId, mut f: impl FnMut(VertexId, f64)) {
        for &id in &self.outgoing[v] {
            let arc = self.arcs[id];
            f(arc.head, arc.length);
        }
    }

    fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}
