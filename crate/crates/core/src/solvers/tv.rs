use crate::functional::{check_len, tv_unchecked};
use crate::graph::Graph;
use crate::{Error, Result};

use super::{apply_b, apply_bt, operator_norm, SolverOptions};

/// Outcome of an iterative inner solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub x: Vec<f64>,
    /// Primal objective at `x`.
    pub objective: f64,
    /// Whether the duality gap reached the tolerance before `max_iters`.
    pub converged: bool,
    pub iterations: usize,
    /// Final duality gap of the iterative phase.
    pub gap: f64,
    /// Whether the cluster refinement replaced the iterate.
    pub polished: bool,
}

const GAP_CHECK_EVERY: usize = 10;
/// Relative tie thresholds tried by the cluster refinement.
const POLISH_TIES: [f64; 5] = [1e-3, 1e-4, 1e-5, 1e-7, 1e-9];

/// `argmin_x I(x) + (w/2)‖x − y‖²₂`.
///
/// Accelerated projected gradient on the dual edge variables: `x = y − Bᵀz/w`
/// and `z ← clip(z + s·Bx)` with `s = step_safety·w/‖B‖²`. Stops when the
/// duality gap `Σ_e |Bx|_e − z_e(Bx)_e` drops below `tol·(1 + I(x))`.
pub fn prox_graph_tv(g: &Graph, y: &[f64], w: f64, opts: &SolverOptions) -> Result<SolveResult> {
    check_len(g, y)?;
    opts.validate()?;
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::InvalidParameter(format!("prox weight must be positive, got {w}")));
    }
    let (n, m) = (g.n(), g.num_edges());
    let objective = |x: &[f64]| {
        tv_unchecked(g, x) + 0.5 * w * x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    };
    if m == 0 {
        return Ok(SolveResult {
            x: y.to_vec(),
            objective: 0.0,
            converged: true,
            iterations: 0,
            gap: 0.0,
            polished: false,
        });
    }
    let norm = operator_norm(g);
    let step = opts.step_safety * w / (norm * norm);

    let mut z = vec![0.0; m];
    let mut z_prev = vec![0.0; m];
    let mut u = vec![0.0; m];
    let mut t = 1.0f64;
    let mut btz = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut bx = vec![0.0; m];
    let primal = |z: &[f64], btz: &mut [f64], x: &mut [f64]| {
        apply_bt(g, z, btz);
        for i in 0..n {
            x[i] = y[i] - btz[i] / w;
        }
    };

    let mut iterations = 0;
    let mut converged = false;
    let mut gap = f64::INFINITY;
    while iterations < opts.max_iters {
        iterations += 1;
        primal(&u, &mut btz, &mut x);
        apply_b(g, &x, &mut bx);
        z_prev.copy_from_slice(&z);
        for e in 0..m {
            z[e] = (u[e] + step * bx[e]).clamp(-1.0, 1.0);
        }
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let beta = (t - 1.0) / t_next;
        // restart momentum when it points uphill
        let uphill: f64 = (0..m).map(|e| (u[e] - z[e]) * (z[e] - z_prev[e])).sum();
        if uphill > 0.0 {
            t = 1.0;
            u.copy_from_slice(&z);
        } else {
            t = t_next;
            for e in 0..m {
                u[e] = z[e] + beta * (z[e] - z_prev[e]);
            }
        }
        if iterations % GAP_CHECK_EVERY == 0 || iterations == opts.max_iters {
            primal(&z, &mut btz, &mut x);
            apply_b(g, &x, &mut bx);
            gap = bx.iter().zip(&z).map(|(d, ze)| d.abs() - ze * d).sum();
            if gap <= opts.tol * (1.0 + tv_unchecked(g, &x)) {
                converged = true;
                break;
            }
        }
    }
    primal(&z, &mut btz, &mut x);
    let mut best = objective(&x);
    let mut polished = false;

    // Exact solution on a guessed cluster structure: x constant on the
    // clusters, z = sign(x_u − x_v) on edges between clusters.
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
    let mut s_bt = vec![0.0; n];
    for tie in POLISH_TIES {
        let (labels, k) = clusters(g, &x, tie * scale);
        let signs = inter_cluster_signs(g, &x, &labels);
        apply_bt(g, &signs, &mut s_bt);
        let mut sum = vec![0.0; k];
        let mut size = vec![0usize; k];
        for i in 0..n {
            sum[labels[i]] += y[i] - s_bt[i] / w;
            size[labels[i]] += 1;
        }
        let cand: Vec<f64> = (0..n).map(|i| sum[labels[i]] / size[labels[i]] as f64).collect();
        let val = objective(&cand);
        if val <= best + 1e-13 * (1.0 + best.abs()) {
            best = val.min(best);
            x = cand;
            polished = true;
        }
    }
    Ok(SolveResult { x, objective: best, converged, iterations, gap, polished })
}

/// `argmin_{‖x‖₂ ≤ 1} I(x) − λ(v, x)`.
///
/// Primal-dual iteration on the saddle problem
/// `min_x max_{‖z‖∞≤1} (Bx, z) − λ(v, x)` with the unit ball as primal
/// constraint; steps satisfy `τσ‖B‖² = step_safety²`. The optimal value is
/// `−min_z ‖Bᵀz − λv‖₂ ≤ 0`, which gives the duality gap used to stop.
///
/// The minimizer is not unique when the optimal value is zero; `warm` (if
/// given) seeds the iteration and is returned when it is already optimal.
pub fn min_ball(g: &Graph, v: &[f64], lam: f64, opts: &SolverOptions, warm: Option<&[f64]>) -> Result<SolveResult> {
    check_len(g, v)?;
    opts.validate()?;
    if !(lam >= 0.0) || !lam.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be nonnegative, got {lam}")));
    }
    let (n, m) = (g.n(), g.num_edges());
    let c: Vec<f64> = v.iter().map(|vi| lam * vi).collect();
    let objective = |x: &[f64]| tv_unchecked(g, x) - x.iter().zip(&c).map(|(a, b)| a * b).sum::<f64>();
    let scale = 1.0 + c.iter().map(|a| a * a).sum::<f64>().sqrt();

    let mut x = match warm {
        Some(w0) => {
            check_len(g, w0)?;
            project_ball(w0.to_vec())
        }
        None => vec![0.0; n],
    };
    let warm_value = objective(&x);
    if m == 0 {
        // I ≡ 0: maximize (c, x) on the ball
        let cn = c.iter().map(|a| a * a).sum::<f64>().sqrt();
        let x: Vec<f64> = if cn > 0.0 { c.iter().map(|a| a / cn).collect() } else { x };
        let objective = objective(&x);
        return Ok(SolveResult { x, objective, converged: true, iterations: 0, gap: 0.0, polished: false });
    }

    let norm = operator_norm(g);
    let tau = opts.step_safety / norm;
    let sigma = opts.step_safety / norm;
    let mut z = vec![0.0; m];
    apply_b(g, &x, &mut z);
    z.iter_mut().for_each(|ze| *ze = ze.signum() * (ze.abs() > 0.0) as u8 as f64);
    let mut x_bar = x.clone();
    let mut bx = vec![0.0; m];
    let mut btz = vec![0.0; n];
    let mut x_new = vec![0.0; n];

    let mut iterations = 0;
    let mut converged = false;
    let mut gap = f64::INFINITY;
    while iterations < opts.max_iters {
        iterations += 1;
        apply_b(g, &x_bar, &mut bx);
        for e in 0..m {
            z[e] = (z[e] + sigma * bx[e]).clamp(-1.0, 1.0);
        }
        apply_bt(g, &z, &mut btz);
        for i in 0..n {
            x_new[i] = x[i] - tau * (btz[i] - c[i]);
        }
        let x_next = project_ball(std::mem::take(&mut x_new));
        for i in 0..n {
            x_bar[i] = 2.0 * x_next[i] - x[i];
        }
        x_new = std::mem::replace(&mut x, x_next);
        if iterations % GAP_CHECK_EVERY == 0 || iterations == opts.max_iters {
            let dual = -(0..n).map(|i| (btz[i] - c[i]).powi(2)).sum::<f64>().sqrt();
            gap = objective(&x) - dual;
            if gap <= opts.tol * scale {
                converged = true;
                break;
            }
        }
    }

    let mut best = objective(&x);
    let mut polished = false;
    let xscale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if xscale > 0.0 {
        let mut s_bt = vec![0.0; n];
        for tie in POLISH_TIES {
            let (labels, k) = clusters(g, &x, tie * xscale);
            let signs = inter_cluster_signs(g, &x, &labels);
            apply_bt(g, &signs, &mut s_bt);
            let mut sum = vec![0.0; k];
            let mut size = vec![0usize; k];
            for i in 0..n {
                sum[labels[i]] += s_bt[i] - c[i];
                size[labels[i]] += 1;
            }
            let mean: Vec<f64> = (0..k).map(|j| sum[j] / size[j] as f64).collect();
            let len = (0..k).map(|j| size[j] as f64 * mean[j] * mean[j]).sum::<f64>().sqrt();
            if len == 0.0 {
                continue;
            }
            let cand: Vec<f64> = (0..n).map(|i| -mean[labels[i]] / len).collect();
            let val = objective(&cand);
            if val <= best + 1e-13 * scale {
                best = val.min(best);
                x = cand;
                polished = true;
            }
        }
    }
    if let Some(w) = warm.filter(|_| warm_value <= best + 1e-13 * scale) {
        let x = project_ball(w.to_vec());
        return Ok(SolveResult { x, objective: warm_value, converged, iterations, gap, polished: false });
    }
    Ok(SolveResult { x, objective: best, converged, iterations, gap, polished })
}

fn project_ball(mut x: Vec<f64>) -> Vec<f64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 1.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Connected components of the edges with `|x_u − x_v| <= tie`.
fn clusters(g: &Graph, x: &[f64], tie: f64) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for &(u, v) in g.edges() {
        if (x[u] - x[v]).abs() <= tie {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut k = 0;
    let mut out = vec![0; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = k;
            k += 1;
        }
        out[i] = label[r];
    }
    (out, k)
}

fn inter_cluster_signs(g: &Graph, x: &[f64], labels: &[usize]) -> Vec<f64> {
    g.edges()
        .iter()
        .map(|&(u, v)| if labels[u] == labels[v] { 0.0 } else { (x[u] - x[v]).signum() })
        .collect()
}
