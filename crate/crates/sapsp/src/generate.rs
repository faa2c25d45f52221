//! Seeded graph generators for the test and benchmark families.
//!
//! All generators are pure functions of their arguments: the same seed
//! always yields the same graph. Weights are drawn as integers so that
//! distance arithmetic stays exact.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

fn draw_length(rng: &mut ChaCha8Rng, wmin: i64, wmax: i64) -> f64 {
    rng.random_range(wmin..=wmax) as f64
}

fn check_range(wmin: i64, wmax: i64, allow_negative: bool) -> Result<(), GraphError> {
    if wmin > wmax {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("empty weight range [{wmin}, {wmax}]"),
        });
    }
    if wmin < 0 && !allow_negative {
        return Err(GraphError::NegativeLength { tail: 0, head: 0, length: wmin as f64 });
    }
    Ok(())
}

/// Random strongly connected digraph with exactly `m` arcs.
///
/// A Hamiltonian cycle over a shuffled vertex order guarantees strong
/// connectivity, which is why `m >= n` is required; the remaining arcs
/// are sampled uniformly among the unused ordered pairs.
pub fn gen_random_digraph(
    n: usize,
    m: usize,
    wmin: i64,
    wmax: i64,
    seed: u64,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    check_range(wmin, wmax, false)?;
    let max = n * (n - 1);
    if m > max {
        return Err(GraphError::TooManyArcs { m, max });
    }
    if m < n {
        return Err(GraphError::TooFewArcs { m, min: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut present = vec![false; n * n];
    let mut raw = Vec::with_capacity(m);
    for i in 0..n {
        let tail = order[i];
        let head = order[(i + 1) % n];
        if tail == head {
            continue; // only when n == 1, which m >= n > max already excludes
        }
        present[tail * n + head] = true;
        raw.push((tail, head, draw_length(&mut rng, wmin, wmax)));
    }

    let extra = m - raw.len();
    if extra > (max - raw.len()) / 2 {
        // Dense request: pick the remainder from an explicit candidate list.
        let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(max - raw.len());
        for tail in 0..n {
            for head in 0..n {
                if tail != head && !present[tail * n + head] {
                    candidates.push((tail, head));
                }
            }
        }
        let (chosen, _) = candidates.partial_shuffle(&mut rng, extra);
        for &(tail, head) in chosen.iter() {
            raw.push((tail, head, draw_length(&mut rng, wmin, wmax)));
        }
    } else {
        while raw.len() < m {
            let tail = rng.random_range(0..n);
            let head = rng.random_range(0..n);
            if tail == head || present[tail * n + head] {
                continue;
            }
            present[tail * n + head] = true;
            raw.push((tail, head, draw_length(&mut rng, wmin, wmax)));
        }
    }
    Ok(Graph::build(n, &raw, false)?.0)
}

/// Random directed acyclic graph: arcs only go from lower to higher rank
/// in a shuffled vertex order, so acyclicity holds by construction.
/// Negative weights are allowed.
pub fn gen_random_dag(
    n: usize,
    m: usize,
    wmin: i64,
    wmax: i64,
    seed: u64,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    check_range(wmin, wmax, true)?;
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(GraphError::TooManyArcs { m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut candidates: Vec<(usize, usize)> = Vec::with_capacity(max);
    for i in 0..n {
        for j in (i + 1)..n {
            candidates.push((order[i], order[j]));
        }
    }
    let (chosen, _) = candidates.partial_shuffle(&mut rng, m);
    let raw: Vec<(usize, usize, f64)> = chosen
        .iter()
        .map(|&(tail, head)| (tail, head, draw_length(&mut rng, wmin, wmax)))
        .collect();
    Ok(Graph::build(n, &raw, wmin < 0)?.0)
}

/// Complete digraph on `n` vertices: every ordered pair carries one arc.
pub fn gen_complete_digraph(n: usize, wmin: i64, wmax: i64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    check_range(wmin, wmax, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::with_capacity(n * (n - 1));
    for tail in 0..n {
        for head in 0..n {
            if tail != head {
                raw.push((tail, head, draw_length(&mut rng, wmin, wmax)));
            }
        }
    }
    Ok(Graph::build(n, &raw, false)?.0)
}

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0.
pub fn gen_cycle_digraph(n: usize, wmin: i64, wmax: i64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    check_range(wmin, wmax, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::with_capacity(n);
    for v in 0..n {
        if n > 1 {
            raw.push((v, (v + 1) % n, draw_length(&mut rng, wmin, wmax)));
        }
    }
    Ok(Graph::build(n, &raw, false)?.0)
}
