//! Bellman-Ford over a graph view. Serves as the reference engine for
//! arbitrary weights and as the negative-cycle detector.

use crate::graph::{GraphView, VertexId};
use crate::sssp::{SsspError, SsspOutput};

/// Exact single-source distances under arbitrary arc lengths, or an error
/// carrying one witness cycle when a negative cycle is reachable from the
/// source.
pub fn bellman_ford(view: &impl GraphView, source: VertexId) -> Result<SsspOutput, SsspError> {
    let n = view.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    dist[source] = 0.0;

    for _round in 1..n {
        let mut changed = false;
        for v in 0..n {
            if dist[v].is_infinite() {
                continue;
            }
            let d = dist[v];
            view.for_each_out(v, |head, length| {
                if d + length < dist[head] {
                    dist[head] = d + length;
                    parent[head] = Some(v);
                    changed = true;
                }
            });
        }
        if !changed {
            break;
        }
    }

    // One more pass: any remaining relaxation proves a reachable negative cycle.
    for v in 0..n {
        if dist[v].is_infinite() {
            continue;
        }
        let d = dist[v];
        let mut witness = None;
        view.for_each_out(v, |head, length| {
            if d + length < dist[head] {
                witness.get_or_insert(head);
            }
        });
        if let Some(head) = witness {
            parent[head] = Some(v);
            return Err(SsspError::NegativeCycle { cycle: extract_cycle(&parent, head, n) });
        }
    }
    Ok(SsspOutput::from_tree(dist, parent, source))
}

/// Walks parent pointers from a vertex known to hang under a negative
/// cycle and returns the cycle's vertices in arc order.
fn extract_cycle(parent: &[Option<VertexId>], start: VertexId, n: usize) -> Vec<VertexId> {
    let mut x = start;
    for _ in 0..n {
        x = parent[x].expect("relaxed vertex has a parent");
    }
    // x now lies on the cycle; collect until it recurs.
    let mut cycle = vec![x];
    let mut cur = parent[x].expect("cycle vertex has a parent");
    while cur != x {
        cycle.push(cur);
        cur = parent[cur].expect("cycle vertex has a parent");
    }
    cycle.reverse(); // parent walking is against arc direction
    cycle
}
