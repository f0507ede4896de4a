//! Wall-clock comparison of the R-distance pipeline with Floyd-Warshall and
//! repeated Dijkstra.
//!
//! Every algorithm runs on a dedicated single-thread pool so that none of
//! them gets more cores than the others. One warm-up run is discarded and the
//! median of the remaining runs is reported.

use std::hint::black_box;
use std::time::Instant;

use super::csv::{expect_len, format_float, parse_bool, parse_f64, parse_int, CsvRecord};
use super::GraphFamily;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::{dijkstra_apsp, exact_apsp, floyd_warshall, graph_diameter};
use crate::resolvent::{
    gamma_bounds, r_distance, resolvent_with, round_up, suggest_gamma, ResolventOptions,
};

pub const ALGORITHMS: [&str; 3] = ["rdist", "floyd_warshall", "dijkstra"];

const MIN_RUNS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    pub graph_family: String,
    pub n_vertices: usize,
    pub median_seconds: f64,
    pub runs: usize,
    /// `median_seconds / median of rdist`; NaN when rdist was inapplicable.
    pub ratio_to_r_distance: f64,
    pub applicable: bool,
}

impl CsvRecord for BenchRecord {
    fn header() -> &'static [&'static str] {
        &[
            "algorithm",
            "graph_family",
            "n_vertices",
            "median_seconds",
            "runs",
            "ratio_to_r_distance",
            "applicable",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.algorithm.clone(),
            self.graph_family.clone(),
            self.n_vertices.to_string(),
            format_float(self.median_seconds),
            self.runs.to_string(),
            format_float(self.ratio_to_r_distance),
            self.applicable.to_string(),
        ]
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        expect_len(f, 7)?;
        Ok(BenchRecord {
            algorithm: f[0].to_string(),
            graph_family: f[1].to_string(),
            n_vertices: parse_int(f[2])?,
            median_seconds: parse_f64(f[3])?,
            runs: parse_int(f[4])?,
            ratio_to_r_distance: parse_f64(f[5])?,
            applicable: parse_bool(f[6])?,
        })
    }
}

fn median_seconds(runs: usize, mut f: impl FnMut()) -> f64 {
    f();
    let mut times: Vec<f64> = (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        0.5 * (times[mid - 1] + times[mid])
    }
}

/// Times the three algorithms on one graph. Gamma comes from
/// [`suggest_gamma`] with the true diameter; if no gamma is feasible the
/// rdist record is marked inapplicable and the baselines are still timed.
pub fn bench_graph(family: &str, g: &Graph, safety: f64, runs: usize) -> Result<Vec<BenchRecord>> {
    if runs < MIN_RUNS {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_RUNS} timed runs, got {runs}"
        )));
    }
    let d_max = graph_diameter(&exact_apsp(g)).ceil().max(1.0) as u32;
    let gamma = suggest_gamma(&gamma_bounds(g, d_max)?, safety).ok();
    let integral = g.kind().is_integral();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot build thread pool: {e}")))?;

    let (rdist, floyd, dijkstra) = pool.install(|| {
        let rdist = gamma.map(|gamma| {
            median_seconds(runs, || {
                let opts = ResolventOptions {
                    reachability: None,
                    skip_residual: true,
                };
                // Singularity here would be a bug in the gamma policy.
                if let Ok(res) = resolvent_with(g, gamma, opts) {
                    let raw = r_distance(&res);
                    black_box(if integral { round_up(&raw) } else { raw });
                }
            })
        });
        let floyd = median_seconds(runs, || {
            black_box(floyd_warshall(g));
        });
        let dijkstra = median_seconds(runs, || {
            black_box(dijkstra_apsp(g));
        });
        (rdist, floyd, dijkstra)
    });

    let base = rdist.unwrap_or(f64::NAN);
    let record = |algorithm: &str, secs: f64, applicable: bool| BenchRecord {
        algorithm: algorithm.to_string(),
        graph_family: family.to_string(),
        n_vertices: g.n(),
        median_seconds: secs,
        runs,
        ratio_to_r_distance: secs / base,
        applicable,
    };
    Ok(vec![
        record(ALGORITHMS[0], base, rdist.is_some()),
        record(ALGORITHMS[1], floyd, true),
        record(ALGORITHMS[2], dijkstra, true),
    ])
}

/// Benchmarks every (family, size) pair serially.
pub fn bench_runtimes(
    families: &[GraphFamily],
    sizes: &[usize],
    safety: f64,
    runs: usize,
) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for family in families {
        for &size in sizes {
            let g = family.build(size)?;
            out.extend(bench_graph(family.name(), &g, safety, runs)?);
        }
    }
    Ok(out)
}
