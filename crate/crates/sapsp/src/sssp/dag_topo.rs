//! Single relaxation pass in topological order: linear-time exact
//! distances on acyclic inputs, negative lengths included.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{GraphView, VertexId};
use crate::sssp::{SsspError, SsspOutput};

/// Kahn's algorithm over a view. Returns a topological order, or the
/// vertices of one witness cycle when none exists. Ready vertices are
/// taken smallest-id first, so the order is deterministic.
pub(crate) fn kahn_order(view: &impl GraphView) -> Result<Vec<VertexId>, Vec<VertexId>> {
    let n = view.vertex_count();
    let mut indegree = vec![0usize; n];
    for v in 0..n {
        view.for_each_out(v, |head, _| indegree[head] += 1);
    }
    let mut ready: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        view.for_each_out(v, |head, _| {
            indegree[head] -= 1;
            if indegree[head] == 0 {
                ready.push(Reverse(head));
            }
        });
    }
    if order.len() == n {
        return Ok(order);
    }

    // Some vertices never became ready; every one of them has a leftover
    // predecessor, so walking predecessors must revisit a vertex.
    let leftover: Vec<bool> = indegree.iter().map(|&d| d > 0).collect();
    let mut preds = vec![Vec::new(); n];
    for v in 0..n {
        if !leftover[v] {
            continue;
        }
        view.for_each_out(v, |head, _| {
            if leftover[head] {
                preds[head].push(v);
            }
        });
    }
    let start = (0..n).find(|&v| leftover[v]).expect("leftover vertex exists");
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut cur = start;
    loop {
        if seen_at[cur] != usize::MAX {
            let mut cycle = walk[seen_at[cur]..].to_vec();
            cycle.reverse(); // predecessor walking is against arc direction
            let lead = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i);
            cycle.rotate_left(lead.unwrap_or(0));
            return Err(cycle);
        }
        seen_at[cur] = walk.len();
        walk.push(cur);
        cur = *preds[cur]
            .iter()
            .min()
            .expect("leftover vertex has a leftover predecessor");
    }
}

/// Exact single-source distances on an acyclic view via one relaxation
/// pass in topological order.
pub fn dag_topo_sssp(view: &impl GraphView, source: VertexId) -> Result<SsspOutput, SsspError> {
    let order = kahn_order(view).map_err(|cycle| SsspError::Cyclic { cycle })?;
    let n = view.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    dist[source] = 0.0;
    for &v in &order {
        if dist[v].is_infinite() {
            continue;
        }
        let d = dist[v];
        view.for_each_out(v, |head, length| {
            if d + length < dist[head] {
                dist[head] = d + length;
                parent[head] = Some(v);
            }
        });
    }
    Ok(SsspOutput::from_tree(dist, parent, source))
}
