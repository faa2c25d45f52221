//! Cursor scheduling that keeps the number of live list cursors bounded
//! by (confirmed shortest-path arcs) + one trial arc per vertex.
//!
//! Incoming arcs of each vertex are sorted by length once. A vertex
//! starts with a single trial cursor on its cheapest incoming arc; an arc
//! at position `t` stays inactive until the arc at `t - 1` resolves. An
//! arc resolves either by promotion (its head entry was used as a
//! shortest path, so the cursor is kept for good) or by refutation (its
//! head entry became non-viable first, so the cursor is dropped). Either
//! way the next arc in the sorted list is activated.

use thiserror::Error;

use crate::graph::{ArcId, Graph, VertexId};

/// Per-vertex incoming arcs sorted by non-decreasing length, ties by arc
/// id. Records the comparison count for the benchmark harness.
#[derive(Debug, Clone)]
pub struct SortedIncidence {
    lists: Vec<Vec<ArcId>>,
    comparisons: u64,
}

impl SortedIncidence {
    pub fn arcs(&self, v: VertexId) -> &[ArcId] {
        &self.lists[v]
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }
}

/// Sorts every vertex's incoming arc list by length.
pub fn build_sorted_incidence(g: &Graph) -> SortedIncidence {
    let mut comparisons = 0u64;
    let lists = (0..g.n())
        .map(|v| {
            let mut arcs = g.incoming_arcs(v).to_vec();
            arcs.sort_by(|&a, &b| {
                comparisons += 1;
                g.arc(a)
                    .length
                    .total_cmp(&g.arc(b).length)
                    .then_with(|| a.cmp(&b))
            });
            arcs
        })
        .collect();
    SortedIncidence { lists, comparisons }
}

/// How a trial arc left probation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// Its head entry was used as a shortest path; the cursor is kept.
    Promoted,
    /// Its head entry became non-viable before any promotion; the cursor
    /// is dropped.
    Refuted,
}

#[derive(Debug, Error, PartialEq)]
#[error("arc {arc} is not the trial arc of vertex {vertex}")]
pub struct NotProbationary {
    pub vertex: VertexId,
    pub arc: ArcId,
}

/// Live-cursor bookkeeping for one solve run.
#[derive(Debug, Clone)]
pub struct ActiveCursorSet {
    incidence: SortedIncidence,
    confirmed: Vec<Vec<ArcId>>,
    probation: Vec<Option<ArcId>>,
    frontier: Vec<usize>,
    live: u64,
}

impl ActiveCursorSet {
    pub fn new(g: &Graph) -> Self {
        let incidence = build_sorted_incidence(g);
        let n = g.n();
        let mut probation = vec![None; n];
        let mut frontier = vec![0usize; n];
        let mut live = 0;
        for v in 0..n {
            if let Some(&first) = incidence.arcs(v).first() {
                probation[v] = Some(first);
                frontier[v] = 1;
                live += 1;
            }
        }
        ActiveCursorSet { incidence, confirmed: vec![Vec::new(); n], probation, frontier, live }
    }

    pub fn incidence(&self) -> &SortedIncidence {
        &self.incidence
    }

    /// Arcs whose cursors are confirmed for `v`.
    pub fn confirmed(&self, v: VertexId) -> &[ArcId] {
        &self.confirmed[v]
    }

    /// The at-most-one trial arc of `v`.
    pub fn probation(&self, v: VertexId) -> Option<ArcId> {
        self.probation[v]
    }

    /// Confirmed cursors plus trial cursors currently alive.
    pub fn live_cursors(&self) -> u64 {
        self.live
    }

    /// Applies a resolution to the trial arc of `v` and activates the
    /// next arc of its sorted incidence list, if one remains.
    pub fn resolve_and_activate(
        &mut self,
        v: VertexId,
        arc: ArcId,
        resolution: Resolution,
    ) -> Result<(), NotProbationary> {
        if self.probation[v] != Some(arc) {
            return Err(NotProbationary { vertex: v, arc });
        }
        self.probation[v] = None;
        match resolution {
            Resolution::Promoted => self.confirmed[v].push(arc),
            Resolution::Refuted => self.live -= 1,
        }
        if let Some(&next) = self.incidence.arcs(v).get(self.frontier[v]) {
            self.frontier[v] += 1;
            self.probation[v] = Some(next);
            self.live += 1;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_k() -> Graph {
        Graph::from_arcs(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 4.0), (0, 2, 5.0)], false)
    }

    #[test]
    fn incidence_sorted_by_length() {
        let g = fixture_k();
        let inc = build_sorted_incidence(&g);
        // Vertex 3 (one-based): arc (2,3) of length 2 before (1,3) of length 5.
        assert_eq!(inc.arcs(2), &[1, 3]);
        assert_eq!(inc.arcs(0), &[2]);
        assert!(inc.comparisons() > 0);
    }

    #[test]
    fn equal_lengths_ordered_by_arc_id() {
        let g = Graph::from_arcs(3, &[(0, 2, 1.0), (1, 2, 1.0)], false);
        let inc = build_sorted_incidence(&g);
        assert_eq!(inc.arcs(2), &[0, 1]);
    }

    #[test]
    fn initial_set_is_cheapest_arc_per_vertex() {
        let acs = ActiveCursorSet::new(&fixture_k());
        assert_eq!(acs.probation(0), Some(2));
        assert_eq!(acs.probation(1), Some(0));
        assert_eq!(acs.probation(2), Some(1));
        assert_eq!(acs.live_cursors(), 3);
    }

    #[test]
    fn promotion_keeps_cursor_and_activates_next() {
        let mut acs = ActiveCursorSet::new(&fixture_k());
        acs.resolve_and_activate(2, 1, Resolution::Promoted).unwrap();
        assert_eq!(acs.confirmed(2), &[1]);
        assert_eq!(acs.probation(2), Some(3));
        assert_eq!(acs.live_cursors(), 4);
    }

    #[test]
    fn refutation_drops_cursor() {
        let mut acs = ActiveCursorSet::new(&fixture_k());
        acs.resolve_and_activate(2, 1, Resolution::Refuted).unwrap();
        assert_eq!(acs.confirmed(2), &[] as &[ArcId]);
        assert_eq!(acs.probation(2), Some(3));
        assert_eq!(acs.live_cursors(), 3);
        // The incidence list of vertex 2 is exhausted now.
        acs.resolve_and_activate(2, 3, Resolution::Refuted).unwrap();
        assert_eq!(acs.probation(2), None);
        assert_eq!(acs.live_cursors(), 2);
    }

    #[test]
    fn exhausted_list_stops_activating() {
        let mut acs = ActiveCursorSet::new(&fixture_k());
        // Vertex 0 has a single incoming arc; promotion leaves nothing to activate.
        acs.resolve_and_activate(0, 2, Resolution::Promoted).unwrap();
        assert_eq!(acs.probation(0), None);
        assert_eq!(acs.confirmed(0), &[2]);
    }

    #[test]
    fn wrong_arc_is_a_contract_violation() {
        let mut acs = ActiveCursorSet::new(&fixture_k());
        let err = acs.resolve_and_activate(2, 0, Resolution::Promoted).unwrap_err();
        assert_eq!(err, NotProbationary { vertex: 2, arc: 0 });
    }
}
