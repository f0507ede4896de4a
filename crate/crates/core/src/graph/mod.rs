//! Dense directed graphs with `+inf` as the "no edge" weight.

mod edge_list;
pub mod generators;

pub use edge_list::{read_edge_list, write_edge_list, Edge, EdgeList};
pub use generators::{
    gen_binary_tree, gen_grid, gen_hanoi, gen_power_law, gen_random_dense, gen_weighted_dense,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Largest integer every `f64` up to which is exact.
pub(crate) const MAX_EXACT_INT: f64 = 9_007_199_254_740_992.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Unweighted,
    IntegerWeighted,
    RealWeighted,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Unweighted => "unweighted",
            GraphKind::IntegerWeighted => "integer-weighted",
            GraphKind::RealWeighted => "real-weighted",
        }
    }

    /// Whether a finite edge weight is admissible for this kind.
    pub fn admits(self, w: f64) -> bool {
        match self {
            GraphKind::Unweighted => w == 1.0,
            GraphKind::IntegerWeighted => (1.0..=MAX_EXACT_INT).contains(&w) && w.fract() == 0.0,
            GraphKind::RealWeighted => w > 0.0 && w.is_finite(),
        }
    }

    /// Narrowest kind admitting every weight in `weights`.
    pub fn infer<'a>(weights: impl IntoIterator<Item = &'a f64>) -> GraphKind {
        let mut kind = GraphKind::Unweighted;
        for &w in weights {
            if kind == GraphKind::Unweighted && !GraphKind::Unweighted.admits(w) {
                kind = GraphKind::IntegerWeighted;
            }
            if kind == GraphKind::IntegerWeighted && !GraphKind::IntegerWeighted.admits(w) {
                return GraphKind::RealWeighted;
            }
        }
        kind
    }

    /// Unit and integer weights make rounded R-distances meaningful.
    pub fn is_integral(self) -> bool {
        self != GraphKind::RealWeighted
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Immutable dense weighted digraph.
///
/// `weight(i, j)` is the weight of the edge from `j` to `i`; `+inf` means no
/// edge and the diagonal is always `+inf`.
#[derive(Clone, PartialEq)]
pub struct Graph {
    n: usize,
    weights: Vec<f64>,
    kind: GraphKind,
}

impl Graph {
    /// Validates and wraps a row-major `n x n` weight array.
    pub fn from_weights(n: usize, weights: Vec<f64>, kind: GraphKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        if weights.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for {n} vertices",
                weights.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if w == f64::INFINITY {
                    continue;
                }
                if i == j {
                    return Err(Error::SelfLoop(i));
                }
                if !kind.admits(w) {
                    return Err(Error::InvalidWeight {
                        from: j,
                        to: i,
                        weight: w,
                        kind: kind.name(),
                    });
                }
            }
        }
        Ok(Graph { n, weights, kind })
    }

    pub fn from_edge_list(edges: &EdgeList, kind: GraphKind) -> Result<Self> {
        let n = edges.vertex_count();
        let mut weights = vec![f64::INFINITY; n * n];
        for e in edges.edges() {
            if !kind.admits(e.weight) {
                return Err(Error::InvalidWeight {
                    from: e.from,
                    to: e.to,
                    weight: e.weight,
                    kind: kind.name(),
                });
            }
            weights[e.to * n + e.from] = e.weight;
        }
        Graph::from_weights(n, weights, kind)
    }

    /// Unweighted graph from `(from, to)` pairs; duplicates collapse.
    pub(crate) fn unweighted_from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut weights = vec![f64::INFINITY; n * n];
        for (from, to) in pairs {
            debug_assert!(from != to && from < n && to < n);
            weights[to * n + from] = 1.0;
        }
        Graph {
            n,
            weights,
            kind: GraphKind::Unweighted,
        }
    }

    pub(crate) fn from_raw(n: usize, weights: Vec<f64>, kind: GraphKind) -> Self {
        Graph { n, weights, kind }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Weight of the edge from `j` to `i`.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    #[inline]
    pub fn edge_weight(&self, from: usize, to: usize) -> f64 {
        self.weight(to, from)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edge_weight(from, to).is_finite()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn edge_count(&self) -> usize {
        self.weights.iter().filter(|w| w.is_finite()).count()
    }

    /// Vertices reachable from `i` in one step, ascending.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.weight(j, i).is_finite())
    }

    /// Outgoing `(to, weight)` lists for every vertex.
    pub fn out_edges(&self) -> Vec<Vec<(usize, f64)>> {
        let mut out = vec![Vec::new(); self.n];
        for i in 0..self.n {
            for (j, &w) in self.weights[i * self.n..(i + 1) * self.n]
                .iter()
                .enumerate()
            {
                if w.is_finite() {
                    out[j].push((i, w));
                }
            }
        }
        out
    }

    /// Whether the finite/infinite pattern is symmetric.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n)
            .all(|i| (0..i).all(|j| self.weight(i, j).is_finite() == self.weight(j, i).is_finite()))
    }

    /// 0/1 matrix with a one wherever an edge exists.
    pub fn adjacency_indicator(&self) -> Matrix {
        let data = self
            .weights
            .iter()
            .map(|w| if w.is_finite() { 1.0 } else { 0.0 })
            .collect();
        Matrix::from_vec(self.n, self.n, data).expect("square by construction")
    }

    pub fn to_edge_list(&self) -> EdgeList {
        let mut edges = Vec::with_capacity(self.edge_count());
        for from in 0..self.n {
            for to in 0..self.n {
                let w = self.edge_weight(from, to);
                if w.is_finite() {
                    edges.push(Edge {
                        from,
                        to,
                        weight: w,
                    });
                }
            }
        }
        EdgeList::from_parts_unchecked(self.n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph {{ n: {}, kind: {}, edges: {} }}",
            self.n,
            self.kind,
            self.edge_count()
        )
    }
}
