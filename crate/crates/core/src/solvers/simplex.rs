//! Dense two-phase simplex with Bland's rule, for the small cell LPs.

use std::fmt;

const EPS: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Indices of the final basic columns.
    pub basis: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
    /// Row lengths disagree with the number of variables.
    Shape,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LpError::Infeasible => "infeasible",
            LpError::Unbounded => "unbounded",
            LpError::IterationLimit => "iteration limit reached",
            LpError::Shape => "inconsistent dimensions",
        };
        f.write_str(s)
    }
}

impl std::error::Error for LpError {}

struct Tableau {
    /// `rows × (cols + 1)`; the last column is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        self.t[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    row.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over the current basis, entering only columns `< allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<(), LpError> {
        let limit = 50_000;
        for _ in 0..limit {
            // reduced costs
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let rc = cost[j] - self.basis.iter().zip(&self.t).map(|(&b, row)| cost[b] * row[j]).sum::<f64>();
                rc < -EPS
            });
            let Some(c) = entering else { return Ok(()) };
            let mut best: Option<(usize, f64)> = None;
            for (r, row) in self.t.iter().enumerate() {
                if row[c] > EPS {
                    let ratio = row[self.cols] / row[c];
                    best = match best {
                        Some((br, bv)) if bv < ratio - EPS => Some((br, bv)),
                        Some((br, bv)) if (bv - ratio).abs() <= EPS && self.basis[br] < self.basis[r] => Some((br, bv)),
                        _ => Some((r, ratio)),
                    };
                }
            }
            let Some((r, _)) = best else { return Err(LpError::Unbounded) };
            self.pivot(r, c);
        }
        Err(LpError::IterationLimit)
    }
}

/// `min cᵀx` subject to `Ax = b`, `x >= 0`.
pub fn solve_standard_form(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(LpError::Shape);
    }
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut r: Vec<f64> = row.iter().map(|v| flip * v).collect();
        r.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
        r.push(flip * b[i]);
        t.push(r);
    }
    let mut tab = Tableau { t, basis: (n..cols).collect(), cols };

    let phase1: Vec<f64> = (0..cols).map(|j| if j >= n { 1.0 } else { 0.0 }).collect();
    tab.optimize(&phase1, cols)?;
    let infeas: f64 = tab.basis.iter().zip(&tab.t).filter(|(&bi, _)| bi >= n).map(|(_, row)| row[cols]).sum();
    let scale = 1.0 + b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if infeas > 1e-8 * scale {
        return Err(LpError::Infeasible);
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| tab.t[r][j].abs() > 1e-9) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(0.0, m));
    tab.optimize(&cost, n)?;

    let mut x = vec![0.0; n];
    for (&bi, row) in tab.basis.iter().zip(&tab.t) {
        x[bi] = row[cols].max(0.0);
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, objective, basis: tab.basis })
}
