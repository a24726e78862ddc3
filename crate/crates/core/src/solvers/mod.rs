//! Convex inner problems shared by the outer methods.
//!
//! * [`prox_graph_tv`]: `argmin_x I(x) + (w/2)‖x − y‖²`
//! * [`min_ball`]: `argmin_{‖x‖₂ ≤ 1} I(x) − λ(v, x)`
//! * [`min_cell`]: `argmin_{x ∈ closure(Δ_m)} I(x)`, an LP solved exactly.
//!
//! The first two share the dual structure `min_{‖z‖∞ ≤ 1} ‖Bᵀz − c‖²` over
//! edge variables `z`, which is what the iterations work on.

mod cell_lp;
mod simplex;
mod tv;

pub use cell_lp::{min_cell, CellMinimum};
pub use simplex::{solve_standard_form, LpError, LpSolution};
pub use tv::{min_ball, prox_graph_tv, SolveResult};

use crate::graph::Graph;
use crate::{Error, Result};

/// Stopping rules for the iterative inner solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Relative duality-gap threshold.
    pub tol: f64,
    pub max_iters: usize,
    /// Fraction of the largest stable primal-dual step.
    pub step_safety: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-8, max_iters: 20_000, step_safety: 0.99 }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_iters == 0 || !(self.step_safety > 0.0 && self.step_safety < 1.0) {
            return Err(Error::InvalidParameter(format!("bad solver options {self:?}")));
        }
        Ok(())
    }
}

/// `(Bx)_e = x_u − x_v` for the oriented edge `e = (u, v)`.
pub(crate) fn apply_b(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (o, &(u, v)) in out.iter_mut().zip(g.edges()) {
        *o = x[u] - x[v];
    }
}

/// `Bᵀz`.
pub(crate) fn apply_bt(g: &Graph, z: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|o| *o = 0.0);
    for (&ze, &(u, v)) in z.iter().zip(g.edges()) {
        out[u] += ze;
        out[v] -= ze;
    }
}

/// `‖B‖₂` estimated by power iteration on `BᵀB` (the combinatorial
/// Laplacian) to relative accuracy 1e-6, capped by the bound `√(2·d_max)`.
pub fn operator_norm(g: &Graph) -> f64 {
    let n = g.n();
    let bound = (2.0 * g.max_degree() as f64).sqrt();
    if g.num_edges() == 0 {
        return 0.0;
    }
    // deterministic, non-symmetric start vector
    let mut x: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * 0.618_033_988_75).fract() - 0.5).collect();
    let mut bx = vec![0.0; g.num_edges()];
    let mut y = vec![0.0; n];
    let mut est = 0.0f64;
    for _ in 0..10_000 {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            x = (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
            continue;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        apply_b(g, &x, &mut bx);
        apply_bt(g, &bx, &mut y);
        let rayleigh = bx.iter().map(|v| v * v).sum::<f64>();
        let done = (rayleigh - est).abs() <= 1e-12 * rayleigh.max(1.0);
        est = rayleigh;
        std::mem::swap(&mut x, &mut y);
        if done {
            break;
        }
    }
    est.sqrt().min(bound)
}
