//! Experiment harness: gamma sweeps, weighted-graph correlation and runtime
//! comparison, all emitted as CSV.

mod bench;
mod correlation;
mod csv;
mod sweep;

pub use bench::{bench_graph, bench_runtimes, BenchRecord, ALGORITHMS};
pub use correlation::{
    correlate_graph, pearson_r_squared, weighted_correlation, CorrelationRecord, CorrelationRun,
    SkippedPoint,
};
pub use csv::{emit_csv, format_float, read_csv, CsvRecord};
pub use sweep::{log_grid, sweep_gamma, sweep_graph, GammaGrid, SweepRecord, GRID_PER_DECADE};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// A generator plus its non-size parameters. Sizes are vertex counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphFamily {
    Hanoi,
    Grid,
    BinaryTree,
    RandomDense {
        p: f64,
        seed: u64,
    },
    PowerLaw {
        exponent: f64,
        seed: u64,
    },
    WeightedDense {
        p: f64,
        w_min: f64,
        w_max: f64,
        seed: u64,
    },
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Hanoi => "hanoi",
            GraphFamily::Grid => "grid",
            GraphFamily::BinaryTree => "tree",
            GraphFamily::RandomDense { .. } => "dense",
            GraphFamily::PowerLaw { .. } => "powerlaw",
            GraphFamily::WeightedDense { .. } => "weighted",
        }
    }

    /// Builds the member with `size` vertices. Hanoi, grid and tree only
    /// exist at sizes `3^d`, `s^2` and `2^L - 1`; power-law graphs keep
    /// their largest component and may come out smaller.
    pub fn build(&self, size: usize) -> Result<Graph> {
        let bad = |what: &str| {
            Error::InvalidParameter(format!(
                "{} has no member with {size} vertices ({what})",
                self.name()
            ))
        };
        match *self {
            GraphFamily::Hanoi => {
                let disks = (1..=graph::generators::MAX_HANOI_DISKS)
                    .find(|&d| 3usize.pow(d) == size)
                    .ok_or_else(|| bad("need 3^disks"))?;
                graph::gen_hanoi(disks)
            }
            GraphFamily::Grid => {
                let side = (size as f64).sqrt().round() as usize;
                if side * side != size || side == 0 {
                    return Err(bad("need side^2"));
                }
                graph::gen_grid(side)
            }
            GraphFamily::BinaryTree => {
                let levels = (size + 1).trailing_zeros();
                if size == 0 || (size + 1) != 1usize << levels {
                    return Err(bad("need 2^levels - 1"));
                }
                graph::gen_binary_tree(levels)
            }
            GraphFamily::RandomDense { p, seed } => graph::gen_random_dense(size, p, seed),
            GraphFamily::PowerLaw { exponent, seed } => graph::gen_power_law(size, exponent, seed),
            GraphFamily::WeightedDense {
                p,
                w_min,
                w_max,
                seed,
            } => graph::gen_weighted_dense(size, p, w_min, w_max, seed),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `<experiment>_<family>_<n>.csv`
pub fn output_file_name(experiment: &str, family: &str, n: usize) -> String {
    format!("{experiment}_{family}_{n}.csv")
}
