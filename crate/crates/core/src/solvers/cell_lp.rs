use crate::cells::{cell_in_pi, CellSign};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Ratio, Result};

use super::simplex::solve_standard_form;

/// Exact minimum of `I` over the closure of a cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellMinimum {
    pub cell: CellSign,
    /// The minimizing vertex `±1_S / vol(S)` of the cell closure.
    pub x: Vec<f64>,
    pub value: Ratio,
    /// Support `S` of the minimizer; contained in one sign class of the cell.
    pub side: VertexSet,
    /// Floating objective reported by the simplex.
    pub lp_objective: f64,
}

/// The cell LP in standard form over `y_i = m(i)·x_i >= 0` (support only),
/// plus a split `p_e − q_e = y_u − y_v` for every edge inside one sign class.
pub(crate) struct CellLp {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    /// Support vertices in column order.
    pub support: Vec<usize>,
}

pub(crate) fn build_cell_lp(g: &Graph, m: &CellSign) -> CellLp {
    let signs = m.signs();
    let support: Vec<usize> = (0..g.n()).filter(|&i| signs[i] != 0).collect();
    let mut col = vec![usize::MAX; g.n()];
    for (k, &i) in support.iter().enumerate() {
        col[i] = k;
    }
    let same: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(u, v)| signs[u] != 0 && signs[u] == signs[v]).collect();
    let nvars = support.len() + 2 * same.len();
    let mut c = vec![0.0; nvars];
    for &(u, v) in g.edges() {
        match (signs[u], signs[v]) {
            (0, 0) => {}
            (0, _) => c[col[v]] += 1.0,
            (_, 0) => c[col[u]] += 1.0,
            (a, b) if a != b => {
                c[col[u]] += 1.0;
                c[col[v]] += 1.0;
            }
            _ => {}
        }
    }
    let mut a = Vec::with_capacity(1 + same.len());
    let mut norm = vec![0.0; nvars];
    for &i in &support {
        norm[col[i]] = g.degree(i) as f64;
    }
    a.push(norm);
    let base = support.len();
    for (k, &(u, v)) in same.iter().enumerate() {
        let (p, q) = (base + 2 * k, base + 2 * k + 1);
        c[p] = 1.0;
        c[q] = 1.0;
        let mut row = vec![0.0; nvars];
        row[col[u]] = 1.0;
        row[col[v]] = -1.0;
        row[p] = -1.0;
        row[q] = 1.0;
        a.push(row);
    }
    let mut b = vec![0.0; a.len()];
    b[0] = 1.0;
    CellLp { c, a, b, support }
}

/// `argmin I(x)` over the closure of `Δ_m`, by simplex, with the value
/// re-evaluated exactly.
///
/// By the co-area formula the minimum equals `min |∂S|/vol(S)` over nonempty
/// `S` inside one sign class of `m`; the level sets of the LP solution are
/// scanned in exact arithmetic to recover that `S`.
pub fn min_cell(g: &Graph, m: &CellSign) -> Result<CellMinimum> {
    if m.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: m.len() });
    }
    if !cell_in_pi(g, m)? {
        return Err(Error::InvalidParameter(format!("cell {m} is not contained in π")));
    }
    let lp = build_cell_lp(g, m);
    let sol = solve_standard_form(&lp.c, &lp.a, &lp.b).map_err(|e| Error::Internal(format!("cell LP for {m}: {e}")))?;
    let mut y = vec![0.0; g.n()];
    for (k, &i) in lp.support.iter().enumerate() {
        y[i] = sol.x[k];
    }

    let signs = m.signs();
    let mut best: Option<(Ratio, VertexSet, i8)> = None;
    for class in [1i8, -1] {
        let mut members: Vec<usize> = lp.support.iter().copied().filter(|&i| signs[i] == class).collect();
        members.sort_by(|&a, &b| y[b].total_cmp(&y[a]).then(a.cmp(&b)));
        let mut s = VertexSet::empty(g.n());
        for &i in &members {
            s.insert(i);
            let vol = g.volume(&s);
            if vol == 0 {
                continue;
            }
            let r = Ratio::new(g.boundary_size(&s) as u64, vol as u64);
            if best.as_ref().is_none_or(|(b, _, _)| r < *b) {
                best = Some((r, s.clone(), class));
            }
        }
    }
    let (value, side, class) = best.ok_or_else(|| Error::InvalidParameter(format!("cell {m} has zero volume")))?;
    if value.to_f64() > sol.objective + 1e-7 * (1.0 + sol.objective.abs()) {
        return Err(Error::Internal(format!(
            "cell {m}: level-set value {value} exceeds LP objective {}",
            sol.objective
        )));
    }
    let vol = g.volume(&side) as f64;
    let x = (0..g.n()).map(|i| if side.contains(i) { class as f64 / vol } else { 0.0 }).collect();
    Ok(CellMinimum { cell: m.clone(), x, value, side, lp_objective: sol.objective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{enumerate_pi_cells, MAX_ENUMERATION_N};
    use crate::functional::tv_value;
    use crate::graph::Family;

    fn cell(v: &[i8]) -> CellSign {
        CellSign::new(v.to_vec()).unwrap()
    }

    #[test]
    fn path_examples() {
        let g = Family::Path(4).build().unwrap();
        let r = min_cell(&g, &cell(&[1, 1, 0, 0])).unwrap();
        assert_eq!(r.value, Ratio::new(1, 3));
        assert_eq!(r.x, vec![1.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]);
        let r = min_cell(&g, &cell(&[1, 0, 0, 0])).unwrap();
        assert_eq!(r.value, Ratio::ONE);
        assert_eq!(r.x, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(min_cell(&g, &cell(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn symmetric_under_negation() {
        let g = Family::Petersen.build().unwrap();
        for m in enumerate_pi_cells(&Family::Path(5).build().unwrap(), MAX_ENUMERATION_N).unwrap() {
            let p5 = Family::Path(5).build().unwrap();
            assert_eq!(min_cell(&p5, &m).unwrap().value, min_cell(&p5, &m.negated()).unwrap().value);
        }
        let m = cell(&[1, 1, 0, -1, 0, 0, 1, 0, 0, -1]);
        assert_eq!(min_cell(&g, &m).unwrap().value, min_cell(&g, &m.negated()).unwrap().value);
    }

    #[test]
    fn minimizer_value_matches_total_variation() {
        let g = Family::Roach(2).build().unwrap();
        for m in enumerate_pi_cells(&g, MAX_ENUMERATION_N).unwrap().iter().step_by(97) {
            let r = min_cell(&g, m).unwrap();
            assert!((tv_value(&g, &r.x).unwrap() - r.value.to_f64()).abs() < 1e-12);
            assert!((r.lp_objective - r.value.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn every_pi_cell_of_p4_is_at_least_h() {
        let g = Family::Path(4).build().unwrap();
        let values: Vec<Ratio> = enumerate_pi_cells(&g, MAX_ENUMERATION_N)
            .unwrap()
            .iter()
            .map(|m| min_cell(&g, m).unwrap().value)
            .collect();
        assert!(values.iter().all(|&v| v >= Ratio::new(1, 3)));
        assert!(values.contains(&Ratio::new(1, 3)));
    }
}
