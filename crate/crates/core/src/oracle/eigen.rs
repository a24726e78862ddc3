use rayon::prelude::*;

use super::flow::circulation_feasible;
use crate::functional::{check_len, f_value};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Ratio, Rational, Result};

pub const MAX_SPECTRUM_N: usize = 16;

/// An eigenvalue with a binary eigenvector `1_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenWitness {
    pub mu: Ratio,
    pub support: VertexSet,
}

impl EigenWitness {
    /// `1_A / vol(A)` as exact rationals.
    pub fn vector(&self, g: &Graph) -> Vec<Rational> {
        let vol = g.volume(&self.support) as i64;
        (0..g.n())
            .map(|i| if self.support.contains(i) { Rational::new(1, vol) } else { Rational::from_integer(0) })
            .collect()
    }
}

/// Whether `(mu, x)` is an eigenpair of the 1-Laplacian.
///
/// Looks for antisymmetric edge values `z_ij` with `z_ij = sign(x_i − x_j)`
/// where the endpoints differ and `z_ij ∈ [−1, 1]` on ties, such that
/// `Σ_j z_ij = mu·d_i·sign(x_i)` at nonzero entries and lies in
/// `[−mu·d_i, mu·d_i]` at zero entries. After scaling by the denominator of
/// `mu` all bounds are integers, so this is an integral circulation problem.
pub fn verify_eigenpair(g: &Graph, mu: Ratio, x: &[Rational]) -> Result<bool> {
    verify_eigenpair_oriented(g, mu, x, &vec![false; g.num_edges()])
}

/// [`verify_eigenpair`] with the edge orientation chosen by `reversed`
/// (`true` flips edge `e`). The verdict does not depend on it.
pub fn verify_eigenpair_oriented(g: &Graph, mu: Ratio, x: &[Rational], reversed: &[bool]) -> Result<bool> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: x.len() });
    }
    if reversed.len() != g.num_edges() {
        return Err(Error::LengthMismatch { expected: g.num_edges(), found: reversed.len() });
    }
    let zero = Rational::from_integer(0);
    if x.iter().all(|v| *v == zero) {
        return Err(Error::ZeroVector);
    }
    let n = g.n();
    let (p, q) = (mu.num() as i64, mu.den() as i64);
    let sign = |v: &Rational| (*v > zero) as i64 - (*v < zero) as i64;

    let mut arcs: Vec<(usize, usize, i64, i64)> = Vec::new();
    let mut fixed = vec![0i64; n];
    for (&(u, v), &rev) in g.edges().iter().zip(reversed) {
        let (a, b) = if rev { (v, u) } else { (u, v) };
        if x[a] == x[b] {
            arcs.push((a, b, 0, q));
            arcs.push((b, a, 0, q));
        } else {
            let z = q * if x[a] > x[b] { 1 } else { -1 };
            fixed[a] += z;
            fixed[b] -= z;
        }
    }
    let hub = n;
    for i in 0..n {
        let d = g.degree(i) as i64;
        let (lo, hi) = match sign(&x[i]) {
            0 => (-p * d, p * d),
            s => (s * p * d, s * p * d),
        };
        let (lo, hi) = (lo - fixed[i], hi - fixed[i]);
        if lo >= 0 {
            arcs.push((hub, i, lo, hi));
        } else if hi <= 0 {
            arcs.push((i, hub, -hi, -lo));
        } else {
            arcs.push((hub, i, 0, hi));
            arcs.push((i, hub, 0, -lo));
        }
    }
    Ok(circulation_feasible(n + 1, &arcs))
}

/// Every eigenvalue of the 1-Laplacian, each with one binary witness.
///
/// Candidates are `|∂A|/vol(A)` over nonempty proper `A`, kept when `1_A`
/// verifies, plus `0` with `A = V`. Sorted, one entry per distinct value,
/// witness with the smallest bitmask.
pub fn spectrum_enumerate(g: &Graph) -> Result<Vec<EigenWitness>> {
    let n = g.n();
    if n > MAX_SPECTRUM_N {
        return Err(Error::TooLarge { n, max: MAX_SPECTRUM_N });
    }
    if !g.is_connected() || n < 2 {
        return Err(Error::Disconnected);
    }
    let one = Rational::from_integer(1);
    let zero = Rational::from_integer(0);
    let found: Vec<(Ratio, u64)> = (1u64..(1 << n) - 1)
        .into_par_iter()
        .filter_map(|mask| {
            let a = VertexSet::from_mask(n, mask);
            let mu = Ratio::new(g.boundary_size(&a) as u64, g.volume(&a) as u64);
            let x: Vec<Rational> = (0..n).map(|i| if a.contains(i) { one } else { zero }).collect();
            verify_eigenpair(g, mu, &x).unwrap().then_some((mu, mask))
        })
        .collect();
    let mut all = found;
    all.push((Ratio::ZERO, (1u64 << n) - 1));
    all.sort();
    all.dedup_by_key(|(mu, _)| *mu);
    Ok(all.into_iter().map(|(mu, mask)| EigenWitness { mu, support: VertexSet::from_mask(n, mask) }).collect())
}

/// One-sided difference quotient `(F(x + t·dir) − F(x)) / t`.
///
/// Probing many directions around a point compares local criticality of `F`
/// with the eigenpair verdict of [`verify_eigenpair`].
pub fn directional_difference(g: &Graph, x: &[f64], dir: &[f64], t: f64) -> Result<f64> {
    check_len(g, x)?;
    check_len(g, dir)?;
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {t}")));
    }
    let moved: Vec<f64> = x.iter().zip(dir).map(|(a, b)| a + t * b).collect();
    Ok((f_value(g, &moved)? - f_value(g, x)?) / t)
}
