use super::{choose_subgradient, round_to_cut, MethodOptions, RunTrace, StepRecord, Termination};
use crate::cells::cell_of;
use crate::functional::{check_len, f_value, in_pi, norm_1d_unchecked, project_to_pi};
use crate::graph::Graph;
use crate::solvers::{min_ball, prox_graph_tv, SolveResult};
use crate::{Error, Method, Result};

/// Inverse power iteration: `x ← argmin_{‖x‖₂≤1} I(x) − λ(v, x)`, then the
/// median shift, a new subgradient and `λ ← F(x)`.
pub fn run_ip(g: &Graph, x0: &[f64], opts: &MethodOptions) -> Result<RunTrace> {
    run_descent(g, x0, opts, Method::Ip)
}

/// Steepest descent: `x ← argmin I(x) + (λ/2c)‖x − (x + c·v)‖₂²`, then as IP.
pub fn run_sd(g: &Graph, x0: &[f64], opts: &MethodOptions) -> Result<RunTrace> {
    run_descent(g, x0, opts, Method::Sd)
}

fn run_descent(g: &Graph, x0: &[f64], opts: &MethodOptions, method: Method) -> Result<RunTrace> {
    opts.validate()?;
    check_len(g, x0)?;
    if !in_pi(g, x0)? {
        return Err(Error::InvalidParameter("initial point must lie in π".into()));
    }
    let norm = norm_1d_unchecked(g, x0);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut x: Vec<f64> = x0.iter().map(|v| v / norm).collect();
    let initial = x.clone();
    let initial_cell = cell_of(g, &x)?;
    let mut lambda = f_value(g, &x)?;
    let mut steps = vec![StepRecord {
        lambda,
        lambda_exact: None,
        cell: None,
        inner_converged: true,
        inner_iterations: 0,
    }];
    let mut termination = Termination::IterationCap;
    let mut solves = 0;

    while solves < opts.max_outer {
        let v = choose_subgradient(g, &x)?;
        solves += 1;
        let inner = inner_step(g, &x, &v, lambda, opts, method)?;
        let Some(res) = inner else {
            termination = Termination::LambdaStall;
            break;
        };
        steps.last_mut().unwrap().inner_converged = res.converged;
        steps.last_mut().unwrap().inner_iterations = res.iterations;
        let Ok(next) = project_to_pi(g, &res.x) else {
            termination = Termination::LambdaStall;
            break;
        };
        let next_lambda = f_value(g, &next)?;
        if next_lambda > lambda {
            termination = Termination::LambdaStall;
            break;
        }
        let decrease = lambda - next_lambda;
        x = next;
        lambda = next_lambda;
        steps.push(StepRecord {
            lambda,
            lambda_exact: None,
            cell: None,
            inner_converged: true,
            inner_iterations: 0,
        });
        if decrease < opts.stall_tol {
            termination = Termination::LambdaStall;
            break;
        }
    }
    let cut = round_to_cut(g, &x)?;
    Ok(RunTrace { method, initial, initial_cell, steps, x, cut, outer_iters: solves, termination })
}

/// The method's inner problem at `x`; `None` when it certifies that no
/// descent is possible (the current point is already optimal for it).
pub(super) fn inner_step(
    g: &Graph,
    x: &[f64],
    v: &[f64],
    lambda: f64,
    opts: &MethodOptions,
    method: Method,
) -> Result<Option<SolveResult>> {
    if lambda <= 0.0 {
        return Ok(None);
    }
    match method {
        Method::Ip => {
            let l2 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            let warm: Vec<f64> = x.iter().map(|a| a / l2).collect();
            let res = min_ball(g, v, lambda, &opts.inner, Some(&warm))?;
            let scale = 1.0 + lambda * v.iter().map(|a| a * a).sum::<f64>().sqrt();
            Ok((res.objective < -1e-10 * scale).then_some(res))
        }
        // Cell descent only needs a sign pattern, so any minimizer will do.
        Method::Cd1 => Ok(Some(min_ball(g, v, lambda, &opts.inner, None)?)),
        Method::Sd | Method::Cd2 => {
            let y: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + opts.c * b).collect();
            let res = prox_graph_tv(g, &y, lambda / opts.c, &opts.inner)?;
            Ok(Some(res))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Family, VertexSet};
    use crate::methods::{initial_from_subset, random_initial};
    use crate::oracle::cheeger_brute;
    use crate::Ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_monotone(t: &RunTrace) {
        for w in t.lambdas().windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "{:?}", t.lambdas());
        }
    }

    #[test]
    fn ip_and_sd_descend_on_petersen() {
        let g = Family::Petersen.build().unwrap();
        let h = cheeger_brute(&g).unwrap().h;
        for seed in 0..10 {
            let (x0, _, _) = random_initial(&g, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            for run in [run_ip, run_sd] {
                let t = run(&g, &x0, &MethodOptions::default()).unwrap();
                assert_monotone(&t);
                assert!(t.h() >= h);
                assert!(t.outer_iters >= 1 && t.outer_iters <= 100);
            }
        }
    }

    #[test]
    fn ip_fixed_point_at_optimal_witness() {
        let g = Family::Path(10).build().unwrap();
        let x0 = initial_from_subset(&g, &VertexSet::from_indices(10, 0..5)).unwrap();
        let t = run_ip(&g, &x0, &MethodOptions::default()).unwrap();
        assert!(t.lambdas().iter().all(|l| (l - 1.0 / 9.0).abs() < 1e-12), "{:?}", t.lambdas());
        assert_eq!(t.h(), Ratio::new(1, 9));
        assert_eq!(t.termination, Termination::LambdaStall);
    }

    #[test]
    fn rejects_points_outside_pi() {
        let g = Family::Path(4).build().unwrap();
        assert!(run_ip(&g, &[1.0, 1.0, 1.0, 0.0], &MethodOptions::default()).is_err());
    }
}
