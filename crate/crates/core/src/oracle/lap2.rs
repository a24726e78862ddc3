//! The linear (2-)Laplacian baseline.

use super::{cut_ratio, Cut};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

const MAX_LAP2_N: usize = 200;

/// Eigenvalues (ascending) and column eigenvectors of a dense symmetric
/// matrix by cyclic Jacobi rotations, to off-diagonal mass `tol·‖A‖_F`.
pub fn jacobi_eigen(a: &[Vec<f64>], tol: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off.sqrt() <= tol * frob.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k][i]).collect()).collect();
    (values, vectors)
}

fn check(g: &Graph) -> Result<()> {
    if g.n() > MAX_LAP2_N {
        return Err(Error::TooLarge { n: g.n(), max: MAX_LAP2_N });
    }
    if g.n() < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn normalized_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for &(u, v) in g.edges() {
        let w = -1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt();
        m[u][v] = w;
        m[v][u] = w;
    }
    m
}

/// Spectrum of `I − D^{-1/2} A D^{-1/2}`, ascending; lies in `[0, 2]`.
pub fn normalized_spectrum(g: &Graph) -> Result<Vec<f64>> {
    check(g)?;
    Ok(jacobi_eigen(&normalized_matrix(g), 1e-12).0)
}

/// Spectrum of `D − A`, ascending.
pub fn combinatorial_spectrum(g: &Graph) -> Result<Vec<f64>> {
    check(g)?;
    let n = g.n();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = g.degree(i) as f64;
    }
    for &(u, v) in g.edges() {
        m[u][v] = -1.0;
        m[v][u] = -1.0;
    }
    Ok(jacobi_eigen(&m, 1e-12).0)
}

/// Second eigenvalue `λ₂` of the normalized Laplacian and the best threshold
/// cut of `D^{-1/2}φ₂`. Satisfies `λ₂/2 <= h <= √(2λ₂)`.
pub fn lap2_second(g: &Graph) -> Result<(f64, Cut)> {
    check(g)?;
    let n = g.n();
    let (values, vectors) = jacobi_eigen(&normalized_matrix(g), 1e-12);
    let f: Vec<f64> = (0..n).map(|i| vectors[1][i] / (g.degree(i) as f64).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    let mut side = VertexSet::empty(n);
    let mut best: Option<Cut> = None;
    for &i in &order[..n - 1] {
        side.insert(i);
        let ratio = cut_ratio(g, &side)?;
        if best.as_ref().is_none_or(|b| ratio < b.ratio) {
            best = Some(Cut { side: side.clone(), ratio });
        }
    }
    Ok((values[1], best.expect("n >= 2 gives at least one threshold")))
}
