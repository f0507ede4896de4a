//! How well raw R-distances track true distances on real-weighted graphs.

use super::csv::{expect_len, format_float, parse_f64, parse_int, CsvRecord};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{gen_weighted_dense, Graph};
use crate::navigation::local_tally;
use crate::oracles::exact_apsp;
use crate::resolvent::{r_distance, resolvent_with, ResolventOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub n_vertices: usize,
    pub gamma: f64,
    pub r_squared: f64,
    pub local_fraction: f64,
    pub pairs: usize,
}

impl CsvRecord for CorrelationRecord {
    fn header() -> &'static [&'static str] {
        &[
            "n_vertices",
            "gamma",
            "r_squared",
            "local_fraction",
            "pairs",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n_vertices.to_string(),
            format_float(self.gamma),
            format_float(self.r_squared),
            format_float(self.local_fraction),
            self.pairs.to_string(),
        ]
    }

    fn from_fields(f: &[&str]) -> Result<Self> {
        expect_len(f, 5)?;
        Ok(CorrelationRecord {
            n_vertices: parse_int(f[0])?,
            gamma: parse_f64(f[1])?,
            r_squared: parse_f64(f[2])?,
            local_fraction: parse_f64(f[3])?,
            pairs: parse_int(f[4])?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub gamma: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorrelationRun {
    pub records: Vec<CorrelationRecord>,
    pub skipped: Vec<SkippedPoint>,
}

/// Squared Pearson correlation; `None` with fewer than two points or zero
/// variance on either axis.
pub fn pearson_r_squared(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let k = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / k;
    let my = ys[..n].iter().sum::<f64>() / k;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy * sxy / (sxx * syy))
}

/// r^2 of raw R against exact distances over off-diagonal pairs where both
/// are finite, plus local accuracy, at each gamma.
pub fn correlate_graph(
    g: &Graph,
    exact: &DistanceMatrix,
    gammas: &[f64],
) -> Result<CorrelationRun> {
    let mut run = CorrelationRun::default();
    let n = g.n();
    for &gamma in gammas {
        let opts = ResolventOptions {
            reachability: Some(exact),
            skip_residual: true,
        };
        let res = match resolvent_with(g, gamma, opts) {
            Ok(res) => res,
            Err(Error::MethodInapplicable { .. }) => {
                run.skipped.push(SkippedPoint {
                    gamma,
                    reason: "1 - X is singular".into(),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let raw = r_distance(&res);
        let (mut rs, mut ds) = (Vec::new(), Vec::new());
        for i in 0..n {
            for j in 0..n {
                let (r, d) = (raw.get(i, j), exact.get(i, j));
                if i != j && r.is_finite() && d.is_finite() {
                    rs.push(r);
                    ds.push(d);
                }
            }
        }
        let Some(r_squared) = pearson_r_squared(&rs, &ds) else {
            run.skipped.push(SkippedPoint {
                gamma,
                reason: format!("r^2 undefined over {} finite pairs", rs.len()),
            });
            continue;
        };
        run.records.push(CorrelationRecord {
            n_vertices: n,
            gamma,
            r_squared,
            local_fraction: local_tally(g, &raw, exact)?.fraction(),
            pairs: rs.len(),
        });
    }
    Ok(run)
}

/// [`correlate_graph`] on a fresh log-uniform weighted dense graph.
pub fn weighted_correlation(
    n: usize,
    p: f64,
    w_min: f64,
    w_max: f64,
    gammas: &[f64],
    seed: u64,
) -> Result<CorrelationRun> {
    let g = gen_weighted_dense(n, p, w_min, w_max, seed)?;
    let exact = exact_apsp(&g);
    correlate_graph(&g, &exact, gammas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, EdgeList, GraphKind};

    #[test]
    fn pearson_basics() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        assert!((pearson_r_squared(&xs, &ys).unwrap() - 1.0).abs() < 1e-15);
        let ys = [1.0, -1.0, 1.0, -1.0];
        let r2 = pearson_r_squared(&xs, &ys).unwrap();
        assert!((r2 - 0.2).abs() < 1e-12, "{r2}");
        assert_eq!(pearson_r_squared(&[1.0], &[1.0]), None);
        assert_eq!(pearson_r_squared(&[1.0, 1.0], &[2.0, 3.0]), None);
    }

    #[test]
    fn single_edge_is_skipped() {
        let el = EdgeList::new(2, vec![Edge::new(0, 1, 2.5)]).unwrap();
        let g = Graph::from_edge_list(&el, GraphKind::RealWeighted).unwrap();
        let exact = exact_apsp(&g);
        let run = correlate_graph(&g, &exact, &[1e-3]).unwrap();
        assert!(run.records.is_empty());
        assert_eq!(run.skipped.len(), 1);
        assert!(run.skipped[0].reason.contains("1 finite pairs"));
    }

    #[test]
    fn small_weighted_graph_correlates() {
        let run = weighted_correlation(40, 0.5, 1.0, 100.0, &[1e-4, 1e-7], 3).unwrap();
        assert_eq!(run.records.len(), 2);
        for r in &run.records {
            assert!(r.r_squared > 0.95, "{r:?}");
            assert!(r.pairs > 0);
        }
        assert_eq!(
            run,
            weighted_correlation(40, 0.5, 1.0, 100.0, &[1e-4, 1e-7], 3).unwrap()
        );
    }
}
