use std::collections::HashSet;

use super::descent::inner_step;
use super::{choose_subgradient, round_to_cut, MethodOptions, RunTrace, StepRecord, Termination};
use crate::cells::{cell_in_pi, cell_of, CellSign};
use crate::functional::project_to_pi;
use crate::graph::Graph;
use crate::solvers::{min_cell, CellMinimum};
use crate::{Error, Method, Ratio, Result};

/// Cell descent with the unit-ball problem choosing the next cell.
pub fn run_cd1(g: &Graph, initial: &CellSign, opts: &MethodOptions) -> Result<RunTrace> {
    run_cd(g, initial, opts, Method::Cd1)
}

/// Cell descent with the prox problem choosing the next cell.
pub fn run_cd2(g: &Graph, initial: &CellSign, opts: &MethodOptions) -> Result<RunTrace> {
    run_cd(g, initial, opts, Method::Cd2)
}

/// Minimize `I` exactly on the current cell; stop if the value went up;
/// otherwise take the subgradient there, solve the direction problem, shift
/// by the median and move to the cell of the result unless it (or its
/// negative) was visited before.
fn run_cd(g: &Graph, initial: &CellSign, opts: &MethodOptions, method: Method) -> Result<RunTrace> {
    opts.validate()?;
    if initial.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: initial.len() });
    }
    if !cell_in_pi(g, initial)? {
        return Err(Error::InvalidParameter(format!("initial cell {initial} is not contained in π")));
    }
    let mut visited: HashSet<CellSign> = HashSet::from([initial.canonical()]);
    let mut cell = initial.clone();
    let mut prev_value = Ratio::ONE;
    let mut best: Option<CellMinimum> = None;
    let mut steps = Vec::new();
    let mut traversed = 0;
    let termination = loop {
        let cur = min_cell(g, &cell)?;
        traversed += 1;
        if cur.value > prev_value && best.is_some() {
            break Termination::ValueIncrease;
        }
        prev_value = cur.value;
        steps.push(StepRecord {
            lambda: cur.value.to_f64(),
            lambda_exact: Some(cur.value),
            cell: Some(cell.clone()),
            inner_converged: true,
            inner_iterations: 0,
        });
        best = Some(cur);
        let x = &best.as_ref().unwrap().x;
        if traversed >= opts.max_outer {
            break Termination::IterationCap;
        }

        let v = choose_subgradient(g, x)?;
        let Some(dir) = inner_step(g, x, &v, prev_value.to_f64(), opts, method)? else {
            break Termination::LambdaStall;
        };
        let last = steps.last_mut().unwrap();
        last.inner_converged = dir.converged;
        last.inner_iterations = dir.iterations;
        let Ok(y) = project_to_pi(g, &dir.x) else {
            break Termination::LambdaStall;
        };
        let next = cell_of(g, &y)?;
        if !cell_in_pi(g, &next)? {
            return Err(Error::Internal(format!("median shift left π at cell {next}")));
        }
        if !visited.insert(next.canonical()) {
            break Termination::CellRevisit;
        }
        cell = next;
    };
    let best = best.expect("first cell is always accepted");
    let cut = round_to_cut(g, &best.x)?;
    Ok(RunTrace {
        method,
        initial: crate::cells::cell_centroid(g, initial)?,
        initial_cell: initial.clone(),
        steps,
        x: best.x,
        cut,
        outer_iters: traversed,
        termination,
    })
}
