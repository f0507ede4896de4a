//! Linear recurrent network whose fixed point is a resolvent column.
//!
//! Each unit outputs `v_i = gamma * w_i` with input
//! `w_i = u_i + sum_j A_ij v_j`, so the fixed point is
//! `v = (1/gamma - A)^-1 u`. Driving a single source `s` with `u = e_s`
//! yields `v_i = gamma^(1 + R_is)`.
//!
//! The network is simulated with synchronous (Jacobi) updates. `settle`
//! starts from the current state, so after a change of input or wiring the
//! network re-converges from where it was.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{lu_invert, Matrix};
use crate::navigation::{default_max_steps, PathResult};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone)]
pub struct AnalogNetwork {
    a: Matrix,
    gamma: f64,
    u: Vec<f64>,
    v: Vec<f64>,
    /// Nonzero `(j, A_ij)` per row `i`, kept in sync with `a`.
    rows: Vec<Vec<(usize, f64)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settle {
    pub iterations: usize,
    pub converged: bool,
}

impl AnalogNetwork {
    /// Network wired to the adjacency indicator of `g`, at rest.
    pub fn from_graph(g: &Graph, gamma: f64) -> Result<Self> {
        AnalogNetwork::new(g.adjacency_indicator(), gamma)
    }

    pub fn new(a: Matrix, gamma: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "connection matrix is {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gain must be positive, got {gamma}"
            )));
        }
        let n = a.rows();
        let rows = (0..n)
            .map(|i| {
                a.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0.0)
                    .map(|(j, &x)| (j, x))
                    .collect()
            })
            .collect();
        Ok(AnalogNetwork {
            a,
            gamma,
            u: vec![0.0; n],
            v: vec![0.0; n],
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn connections(&self) -> &Matrix {
        &self.a
    }

    pub fn input(&self) -> &[f64] {
        &self.u
    }

    pub fn output(&self) -> &[f64] {
        &self.v
    }

    pub fn set_input(&mut self, u: Vec<f64>) -> Result<()> {
        if u.len() != self.n() {
            return Err(Error::ShapeMismatch(format!(
                "input of length {} for {} units",
                u.len(),
                self.n()
            )));
        }
        self.u = u;
        Ok(())
    }

    /// `u = e_source`.
    pub fn drive_single(&mut self, source: usize) -> Result<()> {
        self.check_unit(source)?;
        self.u.iter_mut().for_each(|x| *x = 0.0);
        self.u[source] = 1.0;
        Ok(())
    }

    pub fn reset(&mut self) {
        self.v.iter_mut().for_each(|x| *x = 0.0);
    }

    /// Sets the connection from unit `j` to unit `i`.
    pub fn set_connection(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        self.check_unit(i)?;
        self.check_unit(j)?;
        self.a.set(i, j, value);
        let row = &mut self.rows[i];
        row.retain(|&(k, _)| k != j);
        if value != 0.0 {
            let at = row.partition_point(|&(k, _)| k < j);
            row.insert(at, (j, value));
        }
        Ok(())
    }

    fn check_unit(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: i,
                vertex_count: self.n(),
            })
        }
    }

    /// Synchronous updates `v <- gamma (u + A v)` until every unit changes by
    /// at most `tol` relative to its new value, or `max_iter` is reached.
    ///
    /// Divergence (gain at or above the critical gain) shows up as
    /// `converged == false`.
    pub fn settle(&mut self, tol: f64, max_iter: usize) -> Result<Settle> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tol must be > 0, got {tol}"
            )));
        }
        let mut next = vec![0.0; self.n()];
        for it in 1..=max_iter {
            let mut done = true;
            for (i, row) in self.rows.iter().enumerate() {
                let feedback: f64 = row.iter().map(|&(j, a)| a * self.v[j]).sum();
                let vi = self.gamma * (self.u[i] + feedback);
                let change = (vi - self.v[i]).abs();
                // NaN counts as not converged.
                if change.is_nan() || change > tol * vi.abs() {
                    done = false;
                }
                next[i] = vi;
            }
            std::mem::swap(&mut self.v, &mut next);
            if self.v.iter().any(|x| !x.is_finite()) {
                return Ok(Settle {
                    iterations: it,
                    converged: false,
                });
            }
            if done {
                return Ok(Settle {
                    iterations: it,
                    converged: true,
                });
            }
        }
        Ok(Settle {
            iterations: max_iter,
            converged: false,
        })
    }

    /// Fixed point `(1/gamma - A)^-1 u` by direct inversion.
    pub fn closed_form(&self) -> Result<Vec<f64>> {
        let n = self.n();
        let mut m = self.a.clone();
        for x in m.as_mut_slice().iter_mut() {
            *x = -*x;
        }
        for i in 0..n {
            m[(i, i)] += 1.0 / self.gamma;
        }
        lu_invert(&m)?.mul_vec(&self.u)
    }
}

/// `log v / log gamma - 1`, the R-distance read off a settled output.
/// Non-positive outputs are unreachable (`+inf`).
pub fn output_to_r_distance(v: f64, gamma: f64) -> f64 {
    if v > 0.0 {
        v.ln() / gamma.ln() - 1.0
    } else {
        f64::INFINITY
    }
}

/// R-distances from `source` to every unit, i.e. column `source` of the
/// R-distance matrix. The source's own entry is 0.
pub fn network_distances_from(
    net: &mut AnalogNetwork,
    source: usize,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    net.drive_single(source)?;
    let s = net.settle(tol, max_iter)?;
    if !s.converged {
        return Err(Error::NotConverged {
            iterations: s.iterations,
        });
    }
    let gamma = net.gamma();
    Ok(net
        .output()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == source {
                0.0
            } else {
                output_to_r_distance(v, gamma)
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalogPath {
    pub path: PathResult,
    /// Total settle iterations spent probing successors at each step.
    pub settle_iterations: Vec<usize>,
}

/// Routes from `start` to `goal` by probing: each successor `j` of the
/// current unit is driven alone and the one giving the largest output at
/// `goal` is taken (lowest index on ties). Every step has weight 1.
pub fn analog_navigate(
    net: &mut AnalogNetwork,
    start: usize,
    goal: usize,
    max_steps: Option<usize>,
    tol: f64,
    max_iter: usize,
) -> Result<AnalogPath> {
    net.check_unit(start)?;
    net.check_unit(goal)?;
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(net.n()));
    let mut vertices = vec![start];
    let mut settle_iterations = Vec::new();
    let mut current = start;
    'walk: while current != goal && vertices.len() - 1 < max_steps {
        let successors: Vec<usize> = (0..net.n())
            .filter(|&j| net.connections().get(j, current) != 0.0)
            .collect();
        let mut best: Option<(usize, f64)> = None;
        let mut spent = 0;
        for j in successors {
            net.drive_single(j)?;
            let s = net.settle(tol, max_iter)?;
            spent += s.iterations;
            if !s.converged {
                settle_iterations.push(spent);
                break 'walk;
            }
            let out = net.output()[goal];
            if best.is_none_or(|(_, b)| out > b) {
                best = Some((j, out));
            }
        }
        settle_iterations.push(spent);
        match best {
            Some((j, out)) if out > 0.0 => {
                vertices.push(j);
                current = j;
            }
            _ => break,
        }
    }
    let steps = vertices.len() - 1;
    Ok(AnalogPath {
        path: PathResult {
            reached: current == goal,
            length: steps as f64,
            steps_taken: steps,
            vertices,
        },
        settle_iterations,
    })
}
