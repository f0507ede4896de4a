//! Ground-truth all-pairs distances and walk counts.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind, MAX_EXACT_INT};
use crate::linalg::{mat_mul, Matrix};

/// Absolute tolerance for comparing real-weighted distances.
pub const REAL_DISTANCE_TOL: f64 = 1e-9;

/// Fills a distance matrix column by column; column `s` holds distances from
/// source `s`.
fn from_columns(n: usize, columns: Vec<Vec<f64>>) -> DistanceMatrix {
    let mut d = DistanceMatrix::unreachable(n);
    for (s, col) in columns.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            d.set(i, s, v);
        }
    }
    d
}

fn bfs_column(out: &[Vec<(usize, f64)>], s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; out.len()];
    dist[s] = 0.0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1.0;
        for &(w, _) in &out[v] {
            if dist[w] == f64::INFINITY {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Breadth-first search from every vertex. Unweighted graphs only.
pub fn bfs_apsp(g: &Graph) -> Result<DistanceMatrix> {
    if g.kind() != GraphKind::Unweighted {
        return Err(Error::WrongKind {
            expected: GraphKind::Unweighted.name(),
            found: g.kind().name(),
        });
    }
    let out = g.out_edges();
    let cols = (0..g.n())
        .into_par_iter()
        .map(|s| bfs_column(&out, s))
        .collect();
    Ok(from_columns(g.n(), cols))
}

pub fn floyd_warshall(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = g.weights().to_vec();
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    let mut row_k = vec![0.0; n];
    for k in 0..n {
        // Row k is fixed during step k because d[k][k] = 0.
        row_k.copy_from_slice(&d[k * n..(k + 1) * n]);
        for row in d.chunks_exact_mut(n) {
            // path j -> k -> i: d[k][j] + d[i][k]
            let via = row[k];
            if via == f64::INFINITY {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&row_k) {
                let cand = via + dkj;
                if cand < *dij {
                    *dij = cand;
                }
            }
        }
    }
    DistanceMatrix::from_vec(n, d).expect("n x n")
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    dist: f64,
    vertex: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source Dijkstra over outgoing edge lists.
pub fn dijkstra_from(out: &[Vec<(usize, f64)>], s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; out.len()];
    dist[s] = 0.0;
    let mut heap = BinaryHeap::from([State {
        dist: 0.0,
        vertex: s,
    }]);
    while let Some(State { dist: d, vertex: v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, weight) in &out[v] {
            let cand = d + weight;
            if cand < dist[w] {
                dist[w] = cand;
                heap.push(State {
                    dist: cand,
                    vertex: w,
                });
            }
        }
    }
    dist
}

/// Binary-heap Dijkstra from every vertex. With positive weights this is
/// also what Johnson's algorithm reduces to.
pub fn dijkstra_apsp(g: &Graph) -> DistanceMatrix {
    let out = g.out_edges();
    let cols = (0..g.n())
        .into_par_iter()
        .map(|s| dijkstra_from(&out, s))
        .collect();
    from_columns(g.n(), cols)
}

/// BFS for unweighted graphs, Dijkstra otherwise.
pub fn exact_apsp(g: &Graph) -> DistanceMatrix {
    match g.kind() {
        GraphKind::Unweighted => bfs_apsp(g).expect("unweighted"),
        _ => dijkstra_apsp(g),
    }
}

/// `[A^0, A^1, ..., A^k_max]` for the adjacency matrix; entry `[i][j]` of
/// `A^k` counts walks of length `k` from `j` to `i`.
pub fn path_counts(g: &Graph, k_max: usize) -> Result<Vec<Matrix>> {
    if g.kind() != GraphKind::Unweighted {
        return Err(Error::WrongKind {
            expected: GraphKind::Unweighted.name(),
            found: g.kind().name(),
        });
    }
    let a = g.adjacency_indicator();
    let mut powers = Vec::with_capacity(k_max + 1);
    powers.push(Matrix::identity(g.n()));
    for k in 1..=k_max {
        let next = mat_mul(&a, &powers[k - 1])?;
        if next.max_abs() > MAX_EXACT_INT {
            return Err(Error::CountOverflow { k });
        }
        powers.push(next);
    }
    Ok(powers)
}

/// Largest number of equal-length shortest paths between any pair at
/// distance at most `k_max`, i.e. `max N_ij(D_ij)`.
pub fn max_redundancy(g: &Graph, k_max: usize) -> Result<u64> {
    let powers = path_counts(g, k_max)?;
    let n = g.n();
    let mut best = 0u64;
    for i in 0..n {
        for j in 0..n {
            if let Some(count) = powers.iter().map(|p| p.get(i, j)).find(|&c| c > 0.0) {
                best = best.max(count as u64);
            }
        }
    }
    Ok(best)
}

/// Largest finite distance; 0 when nothing beyond the diagonal is reachable.
pub fn graph_diameter(d: &DistanceMatrix) -> f64 {
    d.max_finite()
}
