use super::*;
use crate::oracle::floyd_warshall;

fn fixture_k() -> Graph {
    // Arc ids: 0 = (1,2,1), 1 = (2,3,2), 2 = (3,1,4), 3 = (1,3,5) one-based.
    Graph::from_arcs(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 0, 4.0), (0, 2, 5.0)], false)
}

/// Four vertices where the expensive arc into vertex 1 is refuted after
/// its head entry arrives through a cheaper route.
/// Arc ids: 0 = (3,0,1), 1 = (0,2,1), 2 = (2,1,1), 3 = (0,1,10).
fn fixture_r() -> Graph {
    Graph::from_arcs(4, &[(3, 0, 1.0), (0, 2, 1.0), (2, 1, 1.0), (0, 1, 10.0)], false)
}

#[test]
fn init_state_fixture_k() {
    let g = fixture_k();
    let st = ApspState::new(&g, Variant::Basic).unwrap();
    for v in 0..3 {
        assert_eq!(st.lists()[v].entries(), &[(v, 0.0)]);
        assert_eq!(st.lists()[v].get(1), SENTINEL);
        assert!(st.star_lengths()[v].is_infinite());
    }
    for arc in 0..4 {
        assert_eq!(st.cursor(arc), 0);
    }
    assert!(st.promoted().is_empty());
    assert_eq!(st.counters().peak_aux_arcs, 3);
    assert_eq!(st.counters().peak_active_cursors, 4);
}

#[test]
fn init_state_single_vertex() {
    let g = Graph::from_arcs(1, &[], false);
    let st = ApspState::new(&g, Variant::Improved).unwrap();
    assert_eq!(st.lists().len(), 1);
    assert_eq!(st.counters().peak_active_cursors, 0);
}

#[test]
fn init_state_rejects_negative_weights() {
    let g = Graph::from_arcs(2, &[(0, 1, -1.0)], true);
    assert_eq!(ApspState::new(&g, Variant::Basic).unwrap_err(), SolveError::NegativeInput);
}

fn best_tuple(b: &BestChoice) -> (Option<usize>, f64, Option<usize>, bool) {
    (b.source, b.dist, b.supplier_arc, b.supplier_was_first)
}

#[test]
fn golden_trace_fixture_k_basic() {
    let g = fixture_k();
    let mut traced = Vec::new();
    let result = solve_apsp_observed(&g, SsspEngine::Dijkstra, Variant::Basic, |view| {
        traced.push((
            view.phase,
            view.best.iter().map(best_tuple).collect::<Vec<_>>(),
            view.star_lengths.to_vec(),
            view.output.dist[..3].to_vec(),
            view.newly_promoted.to_vec(),
            view.lists.iter().map(|l| l.entries().to_vec()).collect::<Vec<_>>(),
        ));
    })
    .unwrap();

    assert_eq!(traced.len(), 2);

    let (phase, best, stars, dist, promoted, lists) = &traced[0];
    assert_eq!(*phase, 1);
    assert_eq!(
        *best,
        vec![
            (Some(2), 4.0, Some(2), true),
            (Some(0), 1.0, Some(0), true),
            (Some(1), 2.0, Some(1), true),
        ]
    );
    assert_eq!(*stars, vec![4.0, 1.0, 2.0]);
    assert_eq!(*dist, vec![4.0, 1.0, 2.0]);
    // Propagation visits vertices in order, promoting (3,1), (1,2), (2,3).
    assert_eq!(*promoted, vec![2, 0, 1]);
    assert_eq!(lists[0], vec![(0, 0.0), (2, 4.0)]);
    assert_eq!(lists[1], vec![(1, 0.0), (0, 1.0)]);
    assert_eq!(lists[2], vec![(2, 0.0), (1, 2.0)]);

    let (phase, best, stars, dist, promoted, lists) = &traced[1];
    assert_eq!(*phase, 2);
    assert_eq!(
        *best,
        vec![
            (Some(1), 6.0, Some(2), false),
            (Some(2), 5.0, Some(0), false),
            // Vertex 3's winner comes through arc (2,3), not the direct (1,3).
            (Some(0), 3.0, Some(1), false),
        ]
    );
    assert_eq!(*stars, vec![6.0, 5.0, 3.0]);
    assert_eq!(*dist, vec![6.0, 5.0, 3.0]);
    assert!(promoted.is_empty());
    assert_eq!(lists[2], vec![(2, 0.0), (1, 2.0), (0, 3.0)]);

    assert_eq!(result.matrix[0], vec![0.0, 1.0, 3.0]);
    assert_eq!(result.matrix[1], vec![6.0, 0.0, 2.0]);
    assert_eq!(result.matrix[2], vec![4.0, 5.0, 0.0]);
    assert_eq!(result.counters.psi_calls, 2);
}

#[test]
fn improved_variant_matches_basic_on_fixture_k() {
    let g = fixture_k();
    let basic = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Basic).unwrap();
    let improved = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Improved).unwrap();
    assert_eq!(basic.matrix, improved.matrix);
    // Three initial trial cursors plus the one activated after (2,3) is
    // promoted; well under the m*+n = 6 budget.
    assert_eq!(improved.counters.peak_active_cursors, 4);
}

#[test]
fn improved_stepping_activates_deferred_arc_after_promotion() {
    let g = fixture_k();
    let mut st = ApspState::new(&g, Variant::Improved).unwrap();
    let acs = st.active_cursors().unwrap();
    // Vertex 3 starts with only its cheapest incoming arc (2,3) live.
    assert_eq!(acs.probation(2), Some(1));
    assert_eq!(acs.confirmed(2), &[] as &[ArcId]);

    st.reload(&g);
    let out = st.run_psi(&g, SsspEngine::Dijkstra).unwrap();
    let newly = st.propagate(&g, &out).unwrap();
    assert_eq!(newly, vec![2, 0, 1]);

    // After (2,3)'s promotion the deferred arc (1,3) goes on trial.
    let acs = st.active_cursors().unwrap();
    assert_eq!(acs.confirmed(2), &[1]);
    assert_eq!(acs.probation(2), Some(3));

    st.reload(&g);
    // Both candidates for vertex 3 carry source 1; the shorter composite
    // route through (2,3) wins the tie.
    assert_eq!(best_tuple(&st.best_choices()[2]), (Some(0), 3.0, Some(1), false));
    let out = st.run_psi(&g, SsspEngine::Dijkstra).unwrap();
    st.propagate(&g, &out).unwrap();
    assert_eq!(st.lists()[2].entries(), &[(2, 0.0), (1, 2.0), (0, 3.0)]);
}

#[test]
fn refutation_drops_trial_arc_and_keeps_answers_exact() {
    let g = fixture_r();
    let dm = floyd_warshall(&g).unwrap();
    let basic = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Basic).unwrap();
    let improved = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Improved).unwrap();
    assert_eq!(basic.matrix, dm);
    assert_eq!(improved.matrix, dm);
    // The length-10 arc (1,2) is never a shortest path, so it is never
    // promoted; the cheap arcs are.
    let mut promoted = improved_promoted(&g);
    promoted.sort_unstable();
    assert_eq!(promoted, vec![0, 1, 2]);
    assert_eq!(improved.counters.psi_calls, 3);
    assert_eq!(improved.counters.peak_active_cursors, 4);
}

/// Runs the improved variant step by step and returns the promoted set,
/// checking the refutation along the way.
fn improved_promoted(g: &Graph) -> Vec<ArcId> {
    let mut st = ApspState::new(g, Variant::Improved).unwrap();
    for _phase in 1..g.n() {
        if st.all_frozen() {
            break;
        }
        let trial_before = st.active_cursors().unwrap().probation(1);
        st.reload(g);
        let trial_after = st.active_cursors().unwrap().probation(1);
        if trial_before == Some(3) && trial_after.is_none() {
            // The expensive arc was refuted: no promotion, no successor.
            assert!(!st.promoted().contains(&3));
        }
        let out = st.run_psi(g, SsspEngine::Dijkstra).unwrap();
        st.propagate(g, &out).unwrap();
    }
    assert_eq!(st.active_cursors().unwrap().probation(1), None);
    st.promoted().to_vec()
}

#[test]
fn live_cursors_stay_within_promoted_plus_one_trial_per_vertex() {
    for g in [fixture_k(), fixture_r()] {
        let mut st = ApspState::new(&g, Variant::Improved).unwrap();
        for _phase in 1..g.n() {
            if st.all_frozen() {
                break;
            }
            st.reload(&g);
            let out = st.run_psi(&g, SsspEngine::Dijkstra).unwrap();
            st.propagate(&g, &out).unwrap();
            let live = st.active_cursors().unwrap().live_cursors();
            assert!(
                live <= (st.promoted().len() + g.n()) as u64,
                "{live} live cursors with {} promoted arcs",
                st.promoted().len()
            );
        }
    }
}

#[test]
fn vertex_without_incoming_arcs_freezes_after_first_phase() {
    let g = Graph::from_arcs(2, &[(0, 1, 7.0)], false);
    let mut frozen_after_phase1 = false;
    let result = solve_apsp_observed(&g, SsspEngine::Dijkstra, Variant::Basic, |view| {
        if view.phase == 1 {
            assert_eq!(best_tuple(&view.best[0]), (None, f64::INFINITY, None, false));
            frozen_after_phase1 = view.frozen[0];
        }
    })
    .unwrap();
    assert!(frozen_after_phase1);
    assert_eq!(result.lists[0], vec![(0, 0.0)]);
    assert!(result.matrix[1][0].is_infinite());
    assert_eq!(result.matrix[0][1], 7.0);
}

#[test]
fn early_exit_when_everything_freezes() {
    // A star from vertex 0: after phase 1 everyone has its only source,
    // after phase 2 everyone is frozen, phase 3 never runs.
    let g = Graph::from_arcs(4, &[(0, 1, 1.0), (0, 2, 2.0), (0, 3, 3.0)], false);
    let result = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Basic).unwrap();
    assert_eq!(result.counters.psi_calls, 2);
    assert_eq!(result.matrix[0], vec![0.0, 1.0, 2.0, 3.0]);
}

#[test]
fn single_vertex_runs_no_phases() {
    let g = Graph::from_arcs(1, &[], false);
    let result = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Improved).unwrap();
    assert_eq!(result.matrix, vec![vec![0.0]]);
    assert_eq!(result.counters.psi_calls, 0);
}

#[test]
fn normalize_ties_prefers_direct_arc() {
    let mut out = SsspOutput {
        dist: vec![5.0, 3.0],
        parent: vec![None, None],
        first_hop: vec![Some(1), Some(0)],
    };
    normalize_ties(&mut out, &[5.0, 5.0]).unwrap();
    assert_eq!(out.first_hop[0], Some(0)); // tie resolved to the direct arc
    assert_eq!(out.first_hop[1], Some(0)); // strictly smaller: untouched
}

#[test]
fn normalize_ties_faults_on_distance_above_direct_arc() {
    let mut out = SsspOutput {
        dist: vec![6.0],
        parent: vec![None],
        first_hop: vec![Some(0)],
    };
    let err = normalize_ties(&mut out, &[5.0]).unwrap_err();
    assert!(matches!(err, SolveError::Fault(_)));
}

#[test]
fn normalize_ties_ignores_mutually_unreachable() {
    let mut out = SsspOutput {
        dist: vec![f64::INFINITY],
        parent: vec![None],
        first_hop: vec![None],
    };
    normalize_ties(&mut out, &[f64::INFINITY]).unwrap();
    assert_eq!(out.first_hop[0], None);
}

#[test]
fn bellman_ford_engine_drives_the_same_answers() {
    let g = fixture_k();
    let a = solve_apsp(&g, SsspEngine::Dijkstra, Variant::Improved).unwrap();
    let b = solve_apsp(&g, SsspEngine::BellmanFord, Variant::Improved).unwrap();
    assert_eq!(a.matrix, b.matrix);
    assert_eq!(a.lists, b.lists);
}

#[test]
fn solved_matrix_matches_oracle_on_fixtures() {
    for g in [fixture_k(), fixture_r()] {
        let dm = floyd_warshall(&g).unwrap();
        for variant in Variant::ALL {
            let result = solve_apsp(&g, SsspEngine::Dijkstra, variant).unwrap();
            assert_eq!(result.matrix, dm);
        }
    }
}
