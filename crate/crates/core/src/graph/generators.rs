//! Graph families used by the experiments. All generators are pure functions
//! of their arguments, seeds included.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphKind};
use crate::error::{Error, Result};

pub const MAX_HANOI_DISKS: u32 = 8;
/// 2^12 - 1 = 4095 vertices, ~134 MB per dense matrix.
pub const MAX_TREE_LEVELS: u32 = 12;
/// Smallest degree drawn by the power-law generator.
pub const POWER_LAW_MIN_DEGREE: usize = 2;

/// Stream id used for edge weights so that the edge pattern of
/// [`gen_weighted_dense`] matches [`gen_random_dense`] for the same seed.
const WEIGHT_STREAM: u64 = 1;

fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::unweighted_from_pairs(n, edges.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]))
}

/// State graph of the Towers of Hanoi on three pegs.
///
/// Vertex `s` encodes the peg of disk `d` (0 = smallest) in base-3 digit `d`.
pub fn gen_hanoi(n_disks: u32) -> Result<Graph> {
    if !(1..=MAX_HANOI_DISKS).contains(&n_disks) {
        return Err(Error::InvalidParameter(format!(
            "hanoi disks must be in 1..={MAX_HANOI_DISKS}, got {n_disks}"
        )));
    }
    let disks = n_disks as usize;
    let n = 3usize.pow(n_disks);
    let pow3: Vec<usize> = (0..disks).map(|d| 3usize.pow(d as u32)).collect();
    let mut pairs = Vec::new();
    for state in 0..n {
        // Smallest disk on each peg is the only one that can move.
        let mut top = [usize::MAX; 3];
        for d in (0..disks).rev() {
            top[(state / pow3[d]) % 3] = d;
        }
        for from in 0..3 {
            let disk = top[from];
            if disk == usize::MAX {
                continue;
            }
            for (to, &top_to) in top.iter().enumerate() {
                if to != from && disk < top_to {
                    let next = state - from * pow3[disk] + to * pow3[disk];
                    pairs.push((state, next));
                }
            }
        }
    }
    Ok(Graph::unweighted_from_pairs(n, pairs))
}

/// Square grid with 4-neighbor links; vertex `r * side + c`.
pub fn gen_grid(side: usize) -> Result<Graph> {
    if side == 0 {
        return Err(Error::InvalidParameter("grid side must be positive".into()));
    }
    let at = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Ok(undirected(side * side, edges))
}

/// Complete binary tree in heap order: children of `i` are `2i+1`, `2i+2`.
pub fn gen_binary_tree(levels: u32) -> Result<Graph> {
    if !(1..=MAX_TREE_LEVELS).contains(&levels) {
        return Err(Error::InvalidParameter(format!(
            "tree levels must be in 1..={MAX_TREE_LEVELS}, got {levels}"
        )));
    }
    let n = (1usize << levels) - 1;
    let edges = (1..n).map(|child| ((child - 1) / 2, child));
    Ok(undirected(n, edges))
}

fn check_dense_params(n: usize, p: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("need 0 < p <= 1, got {p}")));
    }
    Ok(())
}

/// Row-major edge mask: every ordered off-diagonal pair independently with
/// probability `p`.
fn dense_pattern(n: usize, p: f64, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mask = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mask[i * n + j] = rng.random::<f64>() < p;
            }
        }
    }
    mask
}

/// Directed Erdős–Rényi graph G(n, p); not forced to be strongly connected.
pub fn gen_random_dense(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_dense_params(n, p)?;
    let weights = dense_pattern(n, p, seed)
        .into_iter()
        .map(|e| if e { 1.0 } else { f64::INFINITY })
        .collect();
    Ok(Graph::from_raw(n, weights, GraphKind::Unweighted))
}

/// [`gen_random_dense`] pattern with log-uniform weights on `[w_min, w_max]`.
pub fn gen_weighted_dense(n: usize, p: f64, w_min: f64, w_max: f64, seed: u64) -> Result<Graph> {
    check_dense_params(n, p)?;
    if !(w_min > 0.0 && w_min < w_max && w_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < w_min < w_max, got [{w_min}, {w_max}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(WEIGHT_STREAM);
    let (lo, hi) = (w_min.ln(), w_max.ln());
    let weights = dense_pattern(n, p, seed)
        .into_iter()
        .map(|e| {
            if e {
                let u: f64 = rng.random();
                (lo + u * (hi - lo)).exp().clamp(w_min, w_max)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    Ok(Graph::from_raw(n, weights, GraphKind::RealWeighted))
}

/// Undirected configuration-model graph with degrees drawn from
/// `P(k) ~ k^-exponent` on `[2, n-1]`.
///
/// Self-loops and repeated pairings are dropped and the result is restricted
/// to its largest connected component (ties go to the component holding the
/// lowest vertex), so the vertex count can be below `n`.
pub fn gen_power_law(n: usize, exponent: f64, seed: u64) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    if !(exponent > 2.0 && exponent.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need exponent > 2, got {exponent}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let k_min = POWER_LAW_MIN_DEGREE;
    let k_max = n - 1;
    let mut cdf: Vec<f64> = Vec::with_capacity(k_max - k_min + 1);
    let mut acc = 0.0;
    for k in k_min..=k_max {
        acc += (k as f64).powf(-exponent);
        cdf.push(acc);
    }
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            k_min + cdf.partition_point(|&c| c < u).min(cdf.len() - 1)
        })
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let last = degrees.last_mut().expect("n >= 4");
        if *last < k_max {
            *last += 1;
        } else {
            *last -= 1;
        }
    }

    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(&mut rng);
    let mut pairs = BTreeSet::new();
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if a != b {
            pairs.insert((a, b));
        }
    }

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let keep = largest_component(&adj);
    let mut relabel = vec![usize::MAX; n];
    for (new, &old) in keep.iter().enumerate() {
        relabel[old] = new;
    }
    let edges = pairs
        .iter()
        .filter(|(a, _)| relabel[*a] != usize::MAX)
        .map(|&(a, b)| (relabel[a], relabel[b]));
    Ok(undirected(keep.len(), edges))
}

/// Sorted vertex set of the largest connected component.
fn largest_component(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut best: Vec<usize> = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut members = vec![root];
        comp[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = root;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        if members.len() > best.len() {
            best = members;
        }
    }
    best.sort_unstable();
    best
}
