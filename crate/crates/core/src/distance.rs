use std::fmt;

use crate::error::{Error, Result};

/// Dense all-pairs distances; `get(i, j)` is the distance *from `j` to `i`*.
///
/// `f64::INFINITY` marks unreachable pairs. Exact oracles keep every entry
/// non-negative with a zero diagonal; R-distance estimates past the critical
/// gain may hold negative values, which accuracy metrics count as wrong.
#[derive(Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// All entries unreachable except a zero diagonal.
    pub fn unreachable(n: usize) -> Self {
        let mut d = vec![f64::INFINITY; n * n];
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        DistanceMatrix { n, d }
    }

    pub fn from_vec(n: usize, d: Vec<f64>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "{} distances for {n} vertices",
                d.len()
            )));
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.d[i * self.n + j] = value;
    }

    /// Distances from every vertex to `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.d
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.d
    }

    pub fn is_reachable(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_finite()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> DistanceMatrix {
        DistanceMatrix {
            n: self.n,
            d: self.d.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Largest finite entry, 0 when there is none.
    pub fn max_finite(&self) -> f64 {
        self.d
            .iter()
            .copied()
            .filter(|x| x.is_finite())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_same_shape(&self, other: &DistanceMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "distance matrices over {} and {} vertices",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Checks `d(i,k) <= d(i,j) + d(j,k)` for all triples, up to `tol`.
    pub fn satisfies_triangle_inequality(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let dij = self.get(i, j);
                (0..n).all(|k| {
                    // k -> j -> i
                    self.get(i, k) <= dij + self.get(j, k) + tol
                })
            })
        })
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix n={} [", self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
