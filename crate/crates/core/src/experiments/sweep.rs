//! Global and local accuracy of the R-distance as a function of gamma.

use rayon::prelude::*;

use super::csv::{expect_len, format_float, parse_bool, parse_f64, parse_int, CsvRecord};
use super::GraphFamily;
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::navigation::{global_tally, local_tally};
use crate::oracles::{exact_apsp, graph_diameter};
use crate::resolvent::{
    critical_gain, precision_floor, r_distance, resolvent_with, round_up, ResolventOptions,
};

pub const GRID_PER_DECADE: u32 = 32;

/// Lowest gamma the automatic grid will visit.
const AUTO_GRID_MIN: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum GammaGrid {
    /// From a decade below the precision floor up to twice the critical gain.
    Auto,
    /// `[lo * gamma_c, hi * gamma_c]`.
    CriticalWindow {
        lo: f64,
        hi: f64,
    },
    List(Vec<f64>),
}

/// Points `10^(k / per_decade)` inside `[lo, hi]`, ascending. Aligning to
/// whole exponents keeps grids for different graphs comparable.
pub fn log_grid(lo: f64, hi: f64, per_decade: u32) -> Vec<f64> {
    if !(lo > 0.0 && hi >= lo) {
        return Vec::new();
    }
    let pd = f64::from(per_decade);
    let first = (lo.log10() * pd - 1e-9).ceil() as i64;
    let last = (hi.log10() * pd + 1e-9).floor() as i64;
    (first..=last).map(|k| 10f64.powf(k as f64 / pd)).collect()
}

impl GammaGrid {
    pub fn resolve(&self, critical_gain: f64, floor: f64) -> Vec<f64> {
        let cap = if critical_gain.is_finite() {
            critical_gain
        } else {
            1.0
        };
        let mut gammas = match self {
            GammaGrid::Auto => log_grid(
                (floor / 10.0).max(AUTO_GRID_MIN),
                (2.0 * cap).min(0.999),
                GRID_PER_DECADE,
            ),
            GammaGrid::CriticalWindow { lo, hi } => {
                log_grid(lo * cap, (hi * cap).min(0.999), GRID_PER_DECADE)
            }
            GammaGrid::List(list) => list.clone(),
        };
        gammas.retain(|&g| g > 0.0 && g < 1.0);
        gammas.sort_by(f64::total_cmp);
        gammas.dedup();
        gammas
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub graph_family: String,
    pub n_vertices: usize,
    pub gamma: f64,
    pub global_fraction: f64,
    pub local_fraction: f64,
    pub negative_entries: bool,
    pub underflow_zeros: usize,
    pub gamma_over_critical: f64,
    pub precision_floor: f64,
    /// `1 - X` was numerically singular; both fractions are then 0.
    pub singular: bool,
}

impl CsvRecord for SweepRecord {
    fn header() -> &'static [&'static str] {
        &[
            "graph_family",
            "n_vertices",
            "gamma",
            "global_fraction",
            "local_fraction",
            "negative_entries",
            "underflow_zeros",
            "gamma_over_critical",
            "precision_floor",
            "singular",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.graph_family.clone(),
            self.n_vertices.to_string(),
            format_float(self.gamma),
            format_float(self.global_fraction),
            format_float(self.local_fraction),
            self.negative_entries.to_string(),
            self.underflow_zeros.to_string(),
            format_float(self.gamma_over_critical),
            format_float(self.precision_floor),
            self.singular.to_string(),
        ]
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        expect_len(f, 10)?;
        Ok(SweepRecord {
            graph_family: f[0].to_string(),
            n_vertices: parse_int(f[1])?,
            gamma: parse_f64(f[2])?,
            global_fraction: parse_f64(f[3])?,
            local_fraction: parse_f64(f[4])?,
            negative_entries: parse_bool(f[5])?,
            underflow_zeros: parse_int(f[6])?,
            gamma_over_critical: parse_f64(f[7])?,
            precision_floor: parse_f64(f[8])?,
            singular: parse_bool(f[9])?,
        })
    }
}

struct SweepContext<'a> {
    family: &'a str,
    graph: &'a Graph,
    exact: &'a DistanceMatrix,
    critical_gain: f64,
    floor: f64,
}

impl SweepContext<'_> {
    fn point(&self, gamma: f64) -> Result<SweepRecord> {
        let mut rec = SweepRecord {
            graph_family: self.family.to_string(),
            n_vertices: self.graph.n(),
            gamma,
            global_fraction: 0.0,
            local_fraction: 0.0,
            negative_entries: false,
            underflow_zeros: 0,
            gamma_over_critical: gamma / self.critical_gain,
            precision_floor: self.floor,
            singular: false,
        };
        let opts = ResolventOptions {
            reachability: Some(self.exact),
            skip_residual: true,
        };
        let res = match resolvent_with(self.graph, gamma, opts) {
            Ok(res) => res,
            Err(Error::MethodInapplicable { .. }) => {
                rec.singular = true;
                return Ok(rec);
            }
            Err(e) => return Err(e),
        };
        let raw = r_distance(&res);
        rec.global_fraction = global_tally(&round_up(&raw), self.exact)?.fraction();
        rec.local_fraction = local_tally(self.graph, &raw, self.exact)?.fraction();
        rec.negative_entries = res.health.negative_entries;
        rec.underflow_zeros = res.health.underflow_zeros.unwrap_or(0);
        Ok(rec)
    }
}

/// Sweeps one graph. The exact oracle, diameter, critical gain and
/// precision floor are computed once; gamma points run in parallel and come
/// back in ascending order.
pub fn sweep_graph(family: &str, g: &Graph, grid: &GammaGrid) -> Result<Vec<SweepRecord>> {
    let exact = exact_apsp(g);
    let d_max = graph_diameter(&exact).ceil().max(1.0) as u32;
    let ctx = SweepContext {
        family,
        graph: g,
        exact: &exact,
        critical_gain: critical_gain(g)?,
        floor: precision_floor(d_max),
    };
    grid.resolve(ctx.critical_gain, ctx.floor)
        .par_iter()
        .map(|&gamma| ctx.point(gamma))
        .collect()
}

/// One sweep per size; records sorted by (family, n, gamma).
pub fn sweep_gamma(
    family: &GraphFamily,
    sizes: &[usize],
    grid: &GammaGrid,
) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    for &size in sizes {
        let g = family.build(size)?;
        out.extend(sweep_graph(family.name(), &g, grid)?);
    }
    out.sort_by(|a, b| {
        a.graph_family
            .cmp(&b.graph_family)
            .then(a.n_vertices.cmp(&b.n_vertices))
            .then(a.gamma.total_cmp(&b.gamma))
    });
    Ok(out)
}
