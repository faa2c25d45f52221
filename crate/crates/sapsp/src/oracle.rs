//! Brute-force ground truth and validators: a cubic all-pairs oracle,
//! the essential-arc count, and checkers for every claim a solve run
//! makes about its lists and counters.

use serde::Serialize;
use thiserror::Error;

use crate::counters::RunCounters;
use crate::driver::Variant;
use crate::graph::{ArcId, Graph, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("negative cycle through vertex {0}")]
    NegativeCycle(VertexId),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Exact all-pairs distances by dynamic programming over intermediate
/// vertices. Deliberately independent of everything the driver does.
pub fn floyd_warshall(g: &Graph) -> Result<Vec<Vec<f64>>, OracleError> {
    let n = g.n();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for arc in g.arcs() {
        if arc.length < dist[arc.tail][arc.head] {
            dist[arc.tail][arc.head] = arc.length;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k].is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = dist[i][k] + dist[k][j];
                if through < dist[i][j] {
                    dist[i][j] = through;
                }
            }
        }
    }
    for (v, row) in dist.iter().enumerate() {
        if row[v] < 0.0 {
            return Err(OracleError::NegativeCycle(v));
        }
    }
    Ok(dist)
}

/// Arcs lying on at least one shortest path: `(u, v)` qualifies when some
/// source `s` satisfies `d(s,u) + len(u,v) = d(s,v)` exactly. Returns the
/// arc set and its size.
pub fn essential_edges(g: &Graph, dm: &[Vec<f64>]) -> (Vec<ArcId>, usize) {
    let mut arcs = Vec::new();
    for (id, arc) in g.arcs().iter().enumerate() {
        let essential = (0..g.n()).any(|s| {
            dm[s][arc.tail].is_finite() && dm[s][arc.tail] + arc.length == dm[s][arc.head]
        });
        if essential {
            arcs.push(id);
        }
    }
    let count = arcs.len();
    (arcs, count)
}

/// How matrix entries are compared: exactly for integer-weighted inputs,
/// within relative tolerance otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Exact,
    Relative(f64),
}

impl Tolerance {
    pub fn for_graph(g: &Graph) -> Tolerance {
        if g.integer_weighted() {
            Tolerance::Exact
        } else {
            Tolerance::Relative(1e-9)
        }
    }

    fn matches(self, a: f64, b: f64) -> bool {
        if a == b || (a.is_infinite() && b.is_infinite()) {
            return true;
        }
        match self {
            Tolerance::Exact => false,
            Tolerance::Relative(rel) => {
                a.is_finite() && b.is_finite() && (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
            }
        }
    }
}

/// One failed check with a human-readable witness.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Violation {
    pub check: String,
    pub witness: String,
}

/// Outcome of a verification pass; passes exactly when no violation was
/// recorded.
#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, check: &str, witness: String) {
        self.violations.push(Violation { check: check.to_string(), witness });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
    }
}

/// Checks a solved matrix against the oracle's, entry by entry.
pub fn verify_matrix(
    matrix: &[Vec<f64>],
    dm: &[Vec<f64>],
    tolerance: Tolerance,
) -> Result<VerificationReport, OracleError> {
    if matrix.len() != dm.len() {
        return Err(OracleError::DimensionMismatch { expected: dm.len(), got: matrix.len() });
    }
    let mut report = VerificationReport::default();
    for (u, (row, oracle_row)) in matrix.iter().zip(dm).enumerate() {
        if row.len() != dm.len() {
            return Err(OracleError::DimensionMismatch { expected: dm.len(), got: row.len() });
        }
        for (v, (&got, &want)) in row.iter().zip(oracle_row).enumerate() {
            if !tolerance.matches(got, want) {
                report.record(
                    "matrix",
                    format!("pair ({}, {}): solved {got}, oracle {want}", u + 1, v + 1),
                );
            }
        }
    }
    Ok(report)
}

/// Checks every per-vertex list: non-decreasing distances, distinct
/// sources, the exact oracle distance on each entry, and completeness
/// (the inner distances form the same multiset as the oracle's finite
/// distances into the vertex).
///
/// Lists produced by the acyclic pipeline are ordered under the shifted
/// lengths they were solved with; passing the potentials restores that
/// order for the sortedness check.
pub fn verify_sorted_lists(
    lists: &[Vec<(VertexId, f64)>],
    dm: &[Vec<f64>],
    potentials: Option<&[f64]>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = dm.len();
    if lists.len() != n {
        report.record("lists", format!("expected {n} lists, got {}", lists.len()));
        return report;
    }
    for (v, list) in lists.iter().enumerate() {
        let shifted = |source: usize, dist: f64| match potentials {
            Some(h) => dist + h[source] - h[v],
            None => dist,
        };
        if list.first().map(|&(s, d)| (s, d)) != Some((v, 0.0)) {
            report.record("lists-head", format!("list of {} must start with itself at 0", v + 1));
            continue;
        }
        let mut prev = 0.0;
        for &(source, dist) in &list[1..] {
            let key = shifted(source, dist);
            if key < prev {
                report.record(
                    "lists-sorted",
                    format!("list of {}: {key} after {prev}", v + 1),
                );
            }
            prev = key;
        }
        let mut seen = vec![false; n];
        seen[v] = true;
        for &(source, _) in &list[1..] {
            if seen[source] {
                report.record(
                    "lists-distinct",
                    format!("list of {}: source {} repeats", v + 1, source + 1),
                );
            }
            seen[source] = true;
        }
        for &(source, dist) in &list[1..] {
            if dm[source][v] != dist {
                report.record(
                    "lists-exact",
                    format!(
                        "list of {}: source {} at {dist}, oracle {}",
                        v + 1,
                        source + 1,
                        dm[source][v]
                    ),
                );
            }
        }
        let mut got: Vec<f64> = list[1..].iter().map(|&(_, d)| d).collect();
        let mut want: Vec<f64> = (0..n)
            .filter(|&s| s != v && dm[s][v].is_finite())
            .map(|s| dm[s][v])
            .collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        if got != want {
            report.record(
                "lists-complete",
                format!("list of {}: distances {got:?}, oracle {want:?}", v + 1),
            );
        }
    }
    report
}

/// Checks the run counters against their budgets: at most `n - 1` engine
/// calls, auxiliary arcs within essential + hub arcs, and the variant's
/// cursor bounds.
pub fn verify_counters(
    counters: &RunCounters,
    g: &Graph,
    mstar: usize,
    variant: Variant,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = g.n() as u64;
    let m = g.m() as u64;
    let mstar = mstar as u64;
    if counters.psi_calls > n.saturating_sub(1) {
        report.record(
            "counters-psi",
            format!("{} engine calls exceed n-1 = {}", counters.psi_calls, n - 1),
        );
    }
    if counters.peak_aux_arcs > mstar + n {
        report.record(
            "counters-aux",
            format!("peak {} auxiliary arcs exceed m*+n = {}", counters.peak_aux_arcs, mstar + n),
        );
    }
    match variant {
        Variant::Basic => {
            if counters.cursor_advances > m * n {
                report.record(
                    "counters-advances",
                    format!("{} advances exceed m*n = {}", counters.cursor_advances, m * n),
                );
            }
        }
        Variant::Improved => {
            if counters.peak_active_cursors > mstar + n {
                report.record(
                    "counters-cursors",
                    format!(
                        "peak {} live cursors exceed m*+n = {}",
                        counters.peak_active_cursors,
                        mstar + n
                    ),
                );
            }
            if counters.cursor_advances > (mstar + n) * n {
                report.record(
                    "counters-advances",
                    format!(
                        "{} advances exceed (m*+n)*n = {}",
                        counters.cursor_advances,
                        (mstar + n) * n
                    ),
                );
            }
        }
    }
    report
}
