//! The all-pairs driver: n-1 phases of reload / single-source solve /
//! propagate over a small auxiliary graph.
//!
//! Each vertex keeps a list of (source, distance) pairs sorted by
//! distance, discovered one per phase. A phase reloads per-arc cursors
//! into neighbor lists to pick every vertex's best viable candidate,
//! encodes the candidates as direct arcs out of a fresh hub vertex, runs
//! the black-box single-source engine from the hub, and appends the
//! returned distances to the lists. An arc whose own length is confirmed
//! as a shortest path is promoted into the auxiliary graph so later
//! phases can route composite paths through it; everything else stays
//! out, which keeps the auxiliary graph small.

pub mod improved;

use std::time::Instant;

use thiserror::Error;

use crate::counters::RunCounters;
use crate::graph::{ArcId, Graph, GraphView, VertexId};
use crate::result::ApspResult;
use crate::sssp::{SsspEngine, SsspError, SsspOutput};

use improved::{ActiveCursorSet, Resolution};

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("graph has negative arc lengths; use the acyclic pipeline instead")]
    NegativeInput,
    #[error(transparent)]
    Engine(#[from] SsspError),
    #[error("internal consistency fault: {0}")]
    Fault(String),
}

fn fault(msg: impl Into<String>) -> SolveError {
    SolveError::Fault(msg.into())
}

/// Cursor scheduling strategy of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// One cursor per arc, all live for the whole run.
    Basic,
    /// Sorted incoming arcs with deferred activation; live cursors stay
    /// bounded by confirmed shortest-path arcs plus one trial per vertex.
    Improved,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Basic, Variant::Improved];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Improved => "improved",
        }
    }

    pub fn from_name(name: &str) -> Option<Variant> {
        Self::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One element of a vertex's path list: a source vertex and its exact
/// distance. `source == None` is the sentinel every list logically ends
/// with, at infinite distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathEntry {
    pub source: Option<VertexId>,
    pub dist: f64,
}

pub const SENTINEL: PathEntry = PathEntry { source: None, dist: f64::INFINITY };

/// Sorted list of sources known to reach one vertex.
///
/// Starts as `[(owner, 0)]`; each phase may append one entry, distances
/// never decrease along the list, and no source repeats. Positions past
/// the stored entries read as the sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathList {
    owner: VertexId,
    entries: Vec<(VertexId, f64)>,
}

impl ShortestPathList {
    fn new(owner: VertexId) -> Self {
        ShortestPathList { owner, entries: vec![(owner, 0.0)] }
    }

    pub fn owner(&self) -> VertexId {
        self.owner
    }

    /// Entry at a cursor position; the sentinel for any position past the
    /// stored entries.
    pub fn get(&self, pos: usize) -> PathEntry {
        match self.entries.get(pos) {
            Some(&(source, dist)) => PathEntry { source: Some(source), dist },
            None => SENTINEL,
        }
    }

    /// Number of stored entries, head included.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the head entry is always present
    }

    /// All stored `(source, dist)` entries, head first.
    pub fn entries(&self) -> &[(VertexId, f64)] {
        &self.entries
    }

    /// Entries after the head: the sources discovered so far.
    pub fn inner(&self) -> &[(VertexId, f64)] {
        &self.entries[1..]
    }

    fn last_dist(&self) -> f64 {
        self.entries.last().expect("head always present").1
    }

    fn push(&mut self, source: VertexId, dist: f64) {
        self.entries.push((source, dist));
    }
}

/// The winning candidate of one vertex's reload: the minimum viable
/// neighbor-list entry plus the arc length that delivered it. `dist`
/// already includes the arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestChoice {
    pub source: Option<VertexId>,
    pub dist: f64,
    pub supplier_arc: Option<ArcId>,
    /// True when the chosen entry sat at position 0 of the supplier's
    /// list, i.e. the candidate is the supplier arc itself as a path.
    pub supplier_was_first: bool,
}

impl BestChoice {
    fn none() -> Self {
        BestChoice { source: None, dist: f64::INFINITY, supplier_arc: None, supplier_was_first: false }
    }

    /// Replaces the current best when the challenger wins under the
    /// (dist, source id, arc id) order.
    fn challenge(&mut self, source: VertexId, dist: f64, arc: ArcId, was_first: bool) {
        let wins = match self.source {
            None => dist < self.dist,
            Some(cur_source) => {
                let cur_arc = self.supplier_arc.expect("chosen best has a supplier");
                (dist, source, arc) < (self.dist, cur_source, cur_arc)
            }
        };
        if wins {
            *self = BestChoice { source: Some(source), dist, supplier_arc: Some(arc), supplier_was_first: was_first };
        }
    }
}

/// The auxiliary graph the engine runs on: the input's vertices plus a
/// hub, direct hub arcs carrying each vertex's current best candidate,
/// and the promoted arcs. Hub arcs of infinite length are absent.
struct AuxView<'a> {
    g: &'a Graph,
    star_lengths: &'a [f64],
    promoted_out: &'a [Vec<ArcId>],
}

impl AuxView<'_> {
    fn hub(&self) -> VertexId {
        self.g.n()
    }
}

impl GraphView for AuxView<'_> {
    fn vertex_count(&self) -> usize {
        self.g.n() + 1
    }

    fn for_each_out(&self, v: VertexId, mut f: impl FnMut(VertexId, f64)) {
        if v == self.hub() {
            for (target, &len) in self.star_lengths.iter().enumerate() {
                if len.is_finite() {
                    f(target, len);
                }
            }
        } else {
            for &id in &self.promoted_out[v] {
                let arc = self.g.arc(id);
                f(arc.head, arc.length);
            }
        }
    }
}

#[derive(Debug)]
enum CursorPolicy {
    Basic,
    Improved(ActiveCursorSet),
}

/// Mutable state of one all-pairs run.
#[derive(Debug)]
pub struct ApspState {
    n: usize,
    lists: Vec<ShortestPathList>,
    /// Per-arc position into the tail's list. Positions only grow.
    cursors: Vec<usize>,
    /// `solved[v][a]`: source `a` already appears in `v`'s list. The
    /// owner occupies its own list from the start, so `solved[v][v]`
    /// holds from initialization; entries with an already-present source
    /// are exactly the non-viable ones.
    solved: Vec<Vec<bool>>,
    best: Vec<BestChoice>,
    star_lengths: Vec<f64>,
    promoted: Vec<ArcId>,
    is_promoted: Vec<bool>,
    promoted_out: Vec<Vec<ArcId>>,
    frozen: Vec<bool>,
    frozen_count: usize,
    policy: CursorPolicy,
    counters: RunCounters,
}

impl ApspState {
    /// Initializes a run: every list holds only its owner, every cursor
    /// sits at position 0, every hub arc is infinite so an unreloaded arc
    /// can never leak into an engine call, and nothing is promoted.
    pub fn new(g: &Graph, variant: Variant) -> Result<ApspState, SolveError> {
        if g.has_negative() {
            return Err(SolveError::NegativeInput);
        }
        let n = g.n();
        let m = g.m();
        let policy = match variant {
            Variant::Basic => CursorPolicy::Basic,
            Variant::Improved => CursorPolicy::Improved(ActiveCursorSet::new(g)),
        };
        let mut solved = vec![vec![false; n]; n];
        for (v, row) in solved.iter_mut().enumerate() {
            row[v] = true;
        }
        let counters = RunCounters {
            peak_aux_arcs: n as u64,
            peak_active_cursors: match &policy {
                CursorPolicy::Basic => m as u64,
                CursorPolicy::Improved(acs) => acs.live_cursors(),
            },
            ..Default::default()
        };
        Ok(ApspState {
            n,
            lists: (0..n).map(ShortestPathList::new).collect(),
            cursors: vec![0; m],
            solved,
            best: vec![BestChoice::none(); n],
            star_lengths: vec![f64::INFINITY; n],
            promoted: Vec::new(),
            is_promoted: vec![false; m],
            promoted_out: vec![Vec::new(); n],
            frozen: vec![false; n],
            frozen_count: 0,
            policy,
            counters,
        })
    }

    pub fn lists(&self) -> &[ShortestPathList] {
        &self.lists
    }

    pub fn best_choices(&self) -> &[BestChoice] {
        &self.best
    }

    pub fn star_lengths(&self) -> &[f64] {
        &self.star_lengths
    }

    pub fn promoted(&self) -> &[ArcId] {
        &self.promoted
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn all_frozen(&self) -> bool {
        self.frozen_count == self.n
    }

    pub fn cursor(&self, arc: ArcId) -> usize {
        self.cursors[arc]
    }

    pub fn counters(&self) -> &RunCounters {
        &self.counters
    }

    pub fn active_cursors(&self) -> Option<&ActiveCursorSet> {
        match &self.policy {
            CursorPolicy::Basic => None,
            CursorPolicy::Improved(acs) => Some(acs),
        }
    }

    /// Advances every live cursor of every non-frozen vertex past entries
    /// whose source it already holds, picks the minimum viable candidate
    /// per vertex, and writes the winners onto the hub arcs.
    pub fn reload(&mut self, g: &Graph) {
        let Self { lists, cursors, solved, best, star_lengths, frozen, policy, counters, .. } = self;
        for v in 0..g.n() {
            if frozen[v] {
                continue;
            }
            let mut choice = BestChoice::none();
            match policy {
                CursorPolicy::Basic => {
                    for &arc in g.incoming_arcs(v) {
                        advance_and_challenge(g, lists, cursors, &solved[v], counters, v, arc, &mut choice);
                    }
                }
                CursorPolicy::Improved(acs) => {
                    // Resolve the trial arc first: once its head entry is
                    // non-viable the arc is refuted, its cursor dropped,
                    // and the next arc activated. A refuted head costs one
                    // viability check and no cursor movement.
                    while let Some(arc) = acs.probation(v) {
                        let tail = g.arc(arc).tail;
                        counters.viability_checks += 1;
                        if !solved[v][tail] {
                            break;
                        }
                        acs.resolve_and_activate(v, arc, Resolution::Refuted)
                            .expect("probation arc comes from the set itself");
                        counters.peak_active_cursors = counters.peak_active_cursors.max(acs.live_cursors());
                    }
                    for idx in 0..acs.confirmed(v).len() {
                        let arc = acs.confirmed(v)[idx];
                        advance_and_challenge(g, lists, cursors, &solved[v], counters, v, arc, &mut choice);
                    }
                    if let Some(arc) = acs.probation(v) {
                        // Head entry verified viable above; the candidate is
                        // the arc itself as a path.
                        let tail = g.arc(arc).tail;
                        debug_assert_eq!(cursors[arc], 0, "trial cursors never move");
                        choice.challenge(tail, g.arc(arc).length, arc, true);
                    }
                }
            }
            star_lengths[v] = choice.dist;
            best[v] = choice;
        }
    }

    /// Runs the engine once from the hub over the current auxiliary graph
    /// and normalizes distance ties toward the direct hub arcs.
    ///
    /// The returned arrays have `n + 1` slots; the hub occupies the last.
    pub fn run_psi(&mut self, g: &Graph, engine: SsspEngine) -> Result<SsspOutput, SolveError> {
        let view = AuxView { g, star_lengths: &self.star_lengths, promoted_out: &self.promoted_out };
        #[cfg(debug_assertions)]
        if engine.requirement() == crate::sssp::InputRequirement::AcyclicGraph {
            debug_assert!(
                crate::sssp::kahn_order(&view).is_ok(),
                "auxiliary graph must stay acyclic when the input is acyclic"
            );
        }
        self.counters.psi_calls += 1;
        let mut out = engine.solve(&view, view.hub())?;
        normalize_ties(&mut out, &self.star_lengths)?;
        Ok(out)
    }

    /// Appends the engine's findings to the path lists, freezes vertices
    /// the hub can no longer reach, and promotes arcs confirmed to be
    /// shortest paths. Returns the arcs promoted by this phase.
    pub fn propagate(&mut self, g: &Graph, out: &SsspOutput) -> Result<Vec<ArcId>, SolveError> {
        let mut newly_promoted = Vec::new();
        for v in 0..self.n {
            if self.frozen[v] {
                debug_assert!(
                    out.dist[v].is_infinite(),
                    "a frozen vertex regained a finite distance"
                );
                continue;
            }
            let dist = out.dist[v];
            if dist.is_infinite() {
                // No viable candidate and no composite route: every later
                // phase would repeat this, so the list is complete.
                self.frozen[v] = true;
                self.frozen_count += 1;
                continue;
            }
            let hop = out.first_hop[v]
                .ok_or_else(|| fault(format!("finite distance to {v} without a first hop")))?;
            let source = self.best[hop]
                .source
                .ok_or_else(|| fault(format!("first hop {hop} of {v} carries no candidate")))?;
            if dist < self.lists[v].last_dist() {
                return Err(fault(format!(
                    "appending {dist} to vertex {v} would break list sortedness"
                )));
            }
            if self.solved[v][source] {
                return Err(fault(format!("source {source} appended twice for vertex {v}")));
            }
            self.lists[v].push(source, dist);
            self.solved[v][source] = true;

            if hop == v && self.best[v].supplier_was_first {
                let arc = self.best[v].supplier_arc.expect("first-position candidate has a supplier");
                debug_assert!(!self.is_promoted[arc], "an arc cannot be promoted twice");
                if !self.is_promoted[arc] {
                    self.is_promoted[arc] = true;
                    self.promoted.push(arc);
                    self.promoted_out[g.arc(arc).tail].push(arc);
                    newly_promoted.push(arc);
                    self.counters.peak_aux_arcs = self
                        .counters
                        .peak_aux_arcs
                        .max((self.n + self.promoted.len()) as u64);
                    if let CursorPolicy::Improved(acs) = &mut self.policy {
                        acs.resolve_and_activate(v, arc, Resolution::Promoted)
                            .map_err(|e| fault(e.to_string()))?;
                        self.counters.peak_active_cursors =
                            self.counters.peak_active_cursors.max(acs.live_cursors());
                    }
                }
            }
        }
        Ok(newly_promoted)
    }
}

/// Advances one cursor past non-viable entries and offers the entry it
/// lands on as a candidate for vertex `v`.
#[allow(clippy::too_many_arguments)]
fn advance_and_challenge(
    g: &Graph,
    lists: &[ShortestPathList],
    cursors: &mut [usize],
    solved_for_v: &[bool],
    counters: &mut RunCounters,
    _v: VertexId,
    arc: ArcId,
    choice: &mut BestChoice,
) {
    let tail = g.arc(arc).tail;
    let length = g.arc(arc).length;
    let list = &lists[tail];
    let mut pos = cursors[arc];
    loop {
        counters.viability_checks += 1;
        match list.get(pos).source {
            Some(s) if solved_for_v[s] => {
                pos += 1;
                counters.cursor_advances += 1;
            }
            _ => break, // a viable entry, or the always-viable sentinel
        }
    }
    cursors[arc] = pos;
    let entry = list.get(pos);
    if let Some(source) = entry.source {
        choice.challenge(source, entry.dist + length, arc, pos == 0);
    }
}

/// Rewrites the engine output so that a distance tie between a direct hub
/// arc and a composite route always reads as the direct arc. A distance
/// above the direct arc's length is impossible for a correct engine and
/// reported as a fault.
pub fn normalize_ties(out: &mut SsspOutput, star_lengths: &[f64]) -> Result<(), SolveError> {
    for (v, &star) in star_lengths.iter().enumerate() {
        let dist = out.dist[v];
        if dist > star {
            return Err(fault(format!(
                "engine distance {dist} for vertex {v} exceeds its direct hub arc {star}"
            )));
        }
        if dist == star && dist.is_finite() {
            out.first_hop[v] = Some(v);
        }
    }
    Ok(())
}

/// Everything a phase produced, handed to observers after propagation.
pub struct PhaseView<'a> {
    /// 1-based phase number.
    pub phase: usize,
    pub best: &'a [BestChoice],
    pub star_lengths: &'a [f64],
    /// Normalized engine output; slot `n` belongs to the hub.
    pub output: &'a SsspOutput,
    pub lists: &'a [ShortestPathList],
    pub promoted: &'a [ArcId],
    pub newly_promoted: &'a [ArcId],
    pub frozen: &'a [bool],
}

/// Solves all-pairs shortest paths on a non-negative graph by driving the
/// given engine once per phase.
pub fn solve_apsp(g: &Graph, engine: SsspEngine, variant: Variant) -> Result<ApspResult, SolveError> {
    solve_apsp_observed(g, engine, variant, |_| {})
}

/// `solve_apsp` with a per-phase observer, the hook the verification
/// suites use to watch invariants while the run is still in flight.
pub fn solve_apsp_observed(
    g: &Graph,
    engine: SsspEngine,
    variant: Variant,
    mut observe: impl FnMut(&PhaseView<'_>),
) -> Result<ApspResult, SolveError> {
    let started = Instant::now();
    let mut st = ApspState::new(g, variant)?;
    for phase in 1..g.n() {
        if st.all_frozen() {
            break;
        }
        st.reload(g);
        let out = st.run_psi(g, engine)?;
        let newly_promoted = st.propagate(g, &out)?;
        observe(&PhaseView {
            phase,
            best: &st.best,
            star_lengths: &st.star_lengths,
            output: &out,
            lists: &st.lists,
            promoted: &st.promoted,
            newly_promoted: &newly_promoted,
            frozen: &st.frozen,
        });
    }
    st.counters.wall_time = started.elapsed();
    Ok(ApspResult::from_run(g, engine, variant, &st.lists, st.counters))
}

#[cfg(test)]
mod tests;
