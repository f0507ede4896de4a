//! R-distances from the resolvent `Y = (1 - X)^-1`, `X_ij = gamma^W_ij`.
//!
//! For integer weights `Y_ij = sum_d N_ij(d) gamma^d`, where `N_ij(d)` counts
//! paths of length `d`. When `gamma` is small enough the shortest length
//! dominates, `gamma^D < Y_ij < gamma^(D-1)`, and `ceil(log Y_ij / log gamma)`
//! is exactly `D`. The usable window for `gamma` is bounded above by the
//! critical gain `1 / lambda_max` (series convergence) and below by the
//! machine-precision floor `delta^(1/d_max)`.

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::linalg::{self, mat_mul, Matrix};

/// Entries below this count as negative in health accounting.
pub const NEGATIVE_ENTRY_TOL: f64 = -1e-12;

/// Smallest positive subnormal double, about 4.94e-324.
pub const DELTA: f64 = 5e-324;

#[derive(Debug, Clone, PartialEq)]
pub struct Health {
    pub negative_entries: bool,
    /// Off-diagonal exact zeros at pairs known to be reachable; `None` when no
    /// reachability information was supplied.
    pub underflow_zeros: Option<usize>,
    /// `max |(1 - X) Y - 1|`; `None` when not computed.
    pub inversion_residual: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ResolventResult {
    pub y: Matrix,
    pub gamma: f64,
    pub kind: GraphKind,
    pub health: Health,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ResolventOptions<'a> {
    /// Exact distances used to tell underflow from true unreachability.
    pub reachability: Option<&'a DistanceMatrix>,
    pub skip_residual: bool,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )))
    }
}

/// `X_ij = gamma^W_ij`, with missing edges (`W = inf`) mapping to 0.
pub fn build_x(g: &Graph, gamma: f64) -> Result<Matrix> {
    check_gamma(gamma)?;
    let data = g
        .weights()
        .iter()
        .map(|&w| {
            if w == f64::INFINITY {
                0.0
            } else if w == 1.0 {
                gamma
            } else {
                gamma.powf(w)
            }
        })
        .collect();
    Matrix::from_vec(g.n(), g.n(), data)
}

pub fn resolvent(g: &Graph, gamma: f64) -> Result<ResolventResult> {
    resolvent_with(g, gamma, ResolventOptions::default())
}

pub fn resolvent_with(
    g: &Graph,
    gamma: f64,
    opts: ResolventOptions<'_>,
) -> Result<ResolventResult> {
    let mut m = build_x(g, gamma)?;
    let n = g.n();
    for v in m.as_mut_slice().iter_mut() {
        *v = -*v;
    }
    for i in 0..n {
        m[(i, i)] += 1.0;
    }
    let y = match linalg::lu_invert(&m) {
        Ok(y) => y,
        Err(Error::Singular { .. }) => return Err(Error::MethodInapplicable { gamma }),
        Err(e) => return Err(e),
    };

    let negative_entries = y.as_slice().iter().any(|&v| v < NEGATIVE_ENTRY_TOL);
    let underflow_zeros = match opts.reachability {
        Some(exact) => {
            if exact.n() != n {
                return Err(Error::ShapeMismatch(format!(
                    "reachability over {} vertices for a {n}-vertex graph",
                    exact.n()
                )));
            }
            let mut count = 0;
            for i in 0..n {
                for j in 0..n {
                    if i != j && y.get(i, j) == 0.0 && exact.is_reachable(i, j) {
                        count += 1;
                    }
                }
            }
            Some(count)
        }
        None => None,
    };
    let inversion_residual = if opts.skip_residual {
        None
    } else {
        Some(mat_mul(&m, &y)?.max_abs_diff(&Matrix::identity(n))?)
    };

    Ok(ResolventResult {
        y,
        gamma,
        kind: g.kind(),
        health: Health {
            negative_entries,
            underflow_zeros,
            inversion_residual,
        },
    })
}

/// `R_ij = log Y_ij / log gamma`; non-positive entries become `+inf` and the
/// diagonal is 0.
pub fn r_distance(res: &ResolventResult) -> DistanceMatrix {
    let n = res.y.rows();
    let log_gamma = res.gamma.ln();
    let mut d = DistanceMatrix::unreachable(n);
    let out = d.as_mut_slice();
    for (idx, (&y, r)) in res.y.as_slice().iter().zip(out.iter_mut()).enumerate() {
        if idx / n == idx % n {
            *r = 0.0;
        } else if y > 0.0 {
            *r = y.ln() / log_gamma;
        }
    }
    d
}

/// Ceiling of [`r_distance`], meaningful for unit and integer weights.
///
/// No tolerance is applied before the ceiling: a value that lands a hair
/// above an integer through rounding noise rounds up to the next integer
/// and shows up as an error in accuracy metrics.
pub fn rounded_r_distance(res: &ResolventResult) -> DistanceMatrix {
    round_up(&r_distance(res))
}

pub fn round_up(raw: &DistanceMatrix) -> DistanceMatrix {
    raw.map(|r| if r.is_finite() { r.ceil() } else { r })
}

/// `1 / lambda_max` of the adjacency indicator, `+inf` for nilpotent graphs.
///
/// Weighted graphs use the same indicator: with weights >= 1 and gamma < 1,
/// `gamma^W <= gamma A` entrywise, so the bound stays safe.
pub fn critical_gain(g: &Graph) -> Result<f64> {
    let a = g.adjacency_indicator();
    let rho = linalg::spectral_radius(
        &a,
        linalg::DEFAULT_SPECTRAL_TOL,
        linalg::default_max_iter(g.n()),
    )?;
    Ok(if rho.value == 0.0 {
        f64::INFINITY
    } else {
        1.0 / rho.value
    })
}

/// `delta^(1/d_max)`: the smallest gamma with `gamma^d_max` still
/// representable.
pub fn precision_floor(d_max: u32) -> f64 {
    DELTA.powf(1.0 / f64::from(d_max.max(1)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBounds {
    pub critical_gain: f64,
    pub precision_floor_for_dmax: f64,
    pub d_max_used: u32,
    pub feasible: bool,
    pub delta: f64,
    /// Longest distance compatible with the critical gain,
    /// `log delta / log gamma_c`; `+inf` when `gamma_c >= 1`.
    pub max_distance_for_critical_gain: f64,
}

pub fn gamma_bounds(g: &Graph, d_max: u32) -> Result<GammaBounds> {
    Ok(gamma_bounds_for(critical_gain(g)?, d_max))
}

pub fn gamma_bounds_for(critical_gain: f64, d_max: u32) -> GammaBounds {
    let floor = precision_floor(d_max);
    let max_distance = if critical_gain >= 1.0 {
        f64::INFINITY
    } else {
        DELTA.ln() / critical_gain.ln()
    };
    GammaBounds {
        critical_gain,
        precision_floor_for_dmax: floor,
        d_max_used: d_max.max(1),
        feasible: floor < critical_gain,
        delta: DELTA,
        max_distance_for_critical_gain: max_distance,
    }
}

pub const DEFAULT_SAFETY: f64 = 0.01;

/// `safety * gamma_c`, clipped below `0.99 gamma_c` and then raised to at
/// least `10 * floor`. The floor wins when the two clips conflict.
///
/// An infinite critical gain (acyclic graph) is treated as 1.
pub fn suggest_gamma(bounds: &GammaBounds, safety: f64) -> Result<f64> {
    if !(safety > 0.0 && safety < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "safety must lie in (0, 1), got {safety}"
        )));
    }
    if !bounds.feasible {
        return Err(Error::Infeasible {
            floor: bounds.precision_floor_for_dmax,
            critical_gain: bounds.critical_gain,
            d_max: bounds.d_max_used,
        });
    }
    let cap = bounds.critical_gain.min(1.0);
    let gamma = (safety * cap)
        .min(0.99 * cap)
        .max(10.0 * bounds.precision_floor_for_dmax);
    Ok(gamma.min(0.99))
}

/// Resolvent-based total communicability, `sum_ij Y_ij`.
pub fn communicability(res: &ResolventResult) -> Result<f64> {
    if res.health.negative_entries {
        return Err(Error::UnhealthyResolvent { gamma: res.gamma });
    }
    Ok(res.y.sum())
}
