//! Binary-heap Dijkstra over a graph view.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::{GraphView, VertexId};
use crate::sssp::{SsspError, SsspOutput};

#[derive(Copy, Clone, PartialEq)]
struct HeapItem {
    dist: f64,
    vertex: VertexId,
}

impl Eq for HeapItem {}

// Min-heap order on (dist, vertex id); the id component makes pop order,
// and with it the returned tree, deterministic under distance ties.
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact single-source distances on non-negative arc lengths.
///
/// A negative arc reachable from the source is reported as an error
/// naming the offending arc.
pub fn dijkstra(view: &impl GraphView, source: VertexId) -> Result<SsspOutput, SsspError> {
    let n = view.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    heap.push(HeapItem { dist: 0.0, vertex: source });

    let mut bad_arc: Option<(VertexId, VertexId, f64)> = None;
    while let Some(HeapItem { dist: d, vertex: v }) = heap.pop() {
        if d > dist[v] {
            continue; // stale entry
        }
        view.for_each_out(v, |head, length| {
            if length < 0.0 {
                bad_arc.get_or_insert((v, head, length));
                return;
            }
            let candidate = d + length;
            if candidate < dist[head] {
                dist[head] = candidate;
                parent[head] = Some(v);
                heap.push(HeapItem { dist: candidate, vertex: head });
            }
        });
        if let Some((tail, head, length)) = bad_arc {
            return Err(SsspError::NegativeArc { tail, head, length });
        }
    }
    Ok(SsspOutput::from_tree(dist, parent, source))
}
