//! All-pairs shortest-path distances from the resolvent `(1 - X)^-1` of a
//! graph's exponentiated weight matrix.
//!
//! For a gain `0 < gamma < 1` and weights `W`, the matrix `X_ij = gamma^W_ij`
//! sums walk weights geometrically, so `log Y_ij / log gamma` (the
//! *R-distance*) tracks the shortest path length from `j` to `i`. For
//! unweighted and integer-weighted graphs, rounding it up recovers the exact
//! distance whenever `gamma` stays between the machine-precision floor and the
//! redundancy/critical-gain ceilings.
//!
//! Index convention used everywhere: entry `[i][j]` describes the edge (or
//! distance) *from `j` to `i`*.

pub mod analog;
pub mod distance;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod linalg;
pub mod navigation;
pub mod oracles;
pub mod resolvent;

pub use distance::DistanceMatrix;
pub use error::{Error, Result};
pub use graph::{EdgeList, Graph, GraphKind};
pub use linalg::Matrix;
pub use resolvent::{GammaBounds, ResolventResult};
