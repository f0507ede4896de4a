//! Greedy next-hop routing on a distance estimate, and the global/local
//! accuracy measures used by the gamma sweeps.
//!
//! A step from `i` toward goal `g` picks the successor `j` minimizing
//! `W_ji + est[g][j]`. On unweighted graphs every `W_ji` is 1, so this is
//! the plain `argmin est[g][j]` and is evaluated without the addition.
//! Ties go to the lowest vertex index.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::oracles::REAL_DISTANCE_TOL;

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub vertices: Vec<usize>,
    /// Sum of traversed edge weights.
    pub length: f64,
    pub reached: bool,
    pub steps_taken: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyReport {
    pub global_fraction: f64,
    pub local_fraction: f64,
    pub pairs_evaluated: usize,
    pub pairs_excluded_unreachable: usize,
    /// Unreachable pairs whose estimate is not `+inf`.
    pub unreachable_inconsistent: usize,
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v < g.n() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            index: v,
            vertex_count: g.n(),
        })
    }
}

fn check_shapes(g: Option<&Graph>, a: &DistanceMatrix, b: &DistanceMatrix) -> Result<()> {
    a.check_same_shape(b)?;
    if let Some(g) = g {
        if g.n() != a.n() {
            return Err(Error::ShapeMismatch(format!(
                "graph over {} vertices, distances over {}",
                g.n(),
                a.n()
            )));
        }
    }
    Ok(())
}

/// Successor of `i` chosen by the estimate for `goal`, or `None` when `i`
/// has no successors.
fn best_successor(g: &Graph, est: &DistanceMatrix, goal: usize, i: usize) -> Option<usize> {
    let unit = g.kind() == GraphKind::Unweighted;
    let mut best: Option<(usize, f64)> = None;
    for j in g.successors(i) {
        let score = if unit {
            est.get(goal, j)
        } else {
            g.weight(j, i) + est.get(goal, j)
        };
        // NaN never wins; strict < keeps the lowest index on ties.
        match best {
            None => best = Some((j, score)),
            Some((_, s)) if score < s => best = Some((j, score)),
            _ => {}
        }
    }
    best.map(|(j, _)| j)
}

pub fn default_max_steps(n: usize) -> usize {
    4 * n
}

/// Walks from `start` by repeated greedy steps until `goal`, `max_steps`,
/// or a vertex whose successors all have an infinite estimate.
pub fn greedy_descent(
    g: &Graph,
    dist: &DistanceMatrix,
    start: usize,
    goal: usize,
    max_steps: Option<usize>,
) -> Result<PathResult> {
    check_vertex(g, start)?;
    check_vertex(g, goal)?;
    if dist.n() != g.n() {
        return Err(Error::ShapeMismatch(format!(
            "graph over {} vertices, distances over {}",
            g.n(),
            dist.n()
        )));
    }
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(g.n()));
    let mut vertices = vec![start];
    let mut length = 0.0;
    let mut current = start;
    while current != goal && vertices.len() - 1 < max_steps {
        let Some(next) = best_successor(g, dist, goal, current) else {
            break;
        };
        if dist.get(goal, next) == f64::INFINITY {
            break;
        }
        length += g.weight(next, current);
        vertices.push(next);
        current = next;
    }
    Ok(PathResult {
        steps_taken: vertices.len() - 1,
        reached: current == goal,
        vertices,
        length,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GlobalTally {
    pub correct: usize,
    pub evaluated: usize,
    pub unreachable: usize,
    pub unreachable_consistent: usize,
}

impl GlobalTally {
    pub fn fraction(&self) -> f64 {
        if self.evaluated == 0 {
            f64::NAN
        } else {
            self.correct as f64 / self.evaluated as f64
        }
    }
}

/// Counts exact matches over ordered pairs `i != j` that the oracle can
/// reach; unreachable pairs are tallied separately.
pub fn global_tally(estimate: &DistanceMatrix, exact: &DistanceMatrix) -> Result<GlobalTally> {
    check_shapes(None, estimate, exact)?;
    let n = exact.n();
    let mut t = GlobalTally::default();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (e, x) = (estimate.get(i, j), exact.get(i, j));
            if x.is_finite() {
                t.evaluated += 1;
                if e == x {
                    t.correct += 1;
                }
            } else {
                t.unreachable += 1;
                if e == f64::INFINITY {
                    t.unreachable_consistent += 1;
                }
            }
        }
    }
    Ok(t)
}

/// Fraction of reachable ordered pairs whose estimate equals the exact
/// distance. NaN when no pair is reachable.
pub fn global_accuracy(estimate: &DistanceMatrix, exact: &DistanceMatrix) -> Result<f64> {
    Ok(global_tally(estimate, exact)?.fraction())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LocalTally {
    pub correct: usize,
    pub evaluated: usize,
}

impl LocalTally {
    pub fn fraction(&self) -> f64 {
        if self.evaluated == 0 {
            f64::NAN
        } else {
            self.correct as f64 / self.evaluated as f64
        }
    }
}

fn is_optimal_step(g: &Graph, exact: &DistanceMatrix, goal: usize, i: usize, j: usize) -> bool {
    let via = g.weight(j, i) + exact.get(goal, j);
    let target = exact.get(goal, i);
    if g.kind() == GraphKind::RealWeighted {
        (via - target).abs() <= REAL_DISTANCE_TOL
    } else {
        via == target
    }
}

/// Over all (goal, node) pairs with the goal reachable and at least one
/// successor, counts greedy picks that lie on some shortest path.
pub fn local_tally(
    g: &Graph,
    estimate: &DistanceMatrix,
    exact: &DistanceMatrix,
) -> Result<LocalTally> {
    check_shapes(Some(g), estimate, exact)?;
    let n = g.n();
    let mut t = LocalTally::default();
    for goal in 0..n {
        for i in 0..n {
            if i == goal || !exact.is_reachable(goal, i) {
                continue;
            }
            let Some(pick) = best_successor(g, estimate, goal, i) else {
                continue;
            };
            t.evaluated += 1;
            if is_optimal_step(g, exact, goal, i, pick) {
                t.correct += 1;
            }
        }
    }
    Ok(t)
}

pub fn local_accuracy(g: &Graph, estimate: &DistanceMatrix, exact: &DistanceMatrix) -> Result<f64> {
    Ok(local_tally(g, estimate, exact)?.fraction())
}

/// Global accuracy on `rounded`, local accuracy on `raw`.
pub fn accuracy_report(
    g: &Graph,
    rounded: &DistanceMatrix,
    raw: &DistanceMatrix,
    exact: &DistanceMatrix,
) -> Result<AccuracyReport> {
    let global = global_tally(rounded, exact)?;
    let local = local_tally(g, raw, exact)?;
    Ok(AccuracyReport {
        global_fraction: global.fraction(),
        local_fraction: local.fraction(),
        pairs_evaluated: global.evaluated,
        pairs_excluded_unreachable: global.unreachable,
        unreachable_inconsistent: global.unreachable - global.unreachable_consistent,
    })
}
