//! Sign cells `Δ_m` of the sphere `‖x‖_{1,d} = 1` and the cells composing π.

use std::fmt;

use rayon::prelude::*;

use crate::functional::{self, check_len, split_by_signs};
use crate::graph::Graph;
use crate::solvers::{self, CellMinimum};
use crate::{Error, Ratio, Result};

/// Default size limit for the `3^n` cell enumeration.
pub const MAX_ENUMERATION_N: usize = 16;

/// A sign vector `m ∈ {−1, 0, +1}^n`, never identically zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSign(Vec<i8>);

impl CellSign {
    pub fn new(m: Vec<i8>) -> Result<Self> {
        if m.iter().any(|&s| !(-1..=1).contains(&s)) {
            return Err(Error::InvalidParameter("cell entries must be -1, 0 or 1".into()));
        }
        if m.iter().all(|&s| s == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(CellSign(m))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> CellSign {
        CellSign(self.0.iter().map(|s| -s).collect())
    }

    /// `dim Δ_m = #{i : m(i) ≠ 0} − 1`.
    pub fn dimension(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count() - 1
    }

    /// Representative of `{m, −m}`: the lexicographically smaller of the two.
    pub fn canonical(&self) -> CellSign {
        let neg = self.negated();
        if neg.0 < self.0 {
            neg
        } else {
            self.clone()
        }
    }

    /// Base-3 code of the canonical representative (digit 0, 1, 2 for −, 0, +),
    /// vertex 0 most significant. Equal for `m` and `−m`.
    pub fn key(&self) -> u128 {
        assert!(self.0.len() <= 80, "cell key supports up to 80 vertices");
        self.canonical().0.iter().fold(0u128, |acc, &s| acc * 3 + (s + 1) as u128)
    }
}

impl fmt::Display for CellSign {
    /// Renders the nonzero entries as signed 0-based indices, e.g. `[+0, +1, -3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| format!("{}{i}", if s > 0 { '+' } else { '-' }))
            .collect();
        write!(f, "[{}]", items.join(", "))
    }
}

impl fmt::Debug for CellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The cell containing `x` (componentwise sign under the zero tolerance).
pub fn cell_of(g: &Graph, x: &[f64]) -> Result<CellSign> {
    check_len(g, x)?;
    CellSign::new(functional::signs(x))
}

/// Number of `k`-dimensional cells of the sphere in `ℝ^n`: `C(n, k+1)·2^{k+1}`.
pub fn cell_count(n: usize, k: usize) -> u128 {
    if k >= n {
        return 0;
    }
    let r = (k + 1) as u128;
    let mut binom = 1u128;
    for i in 0..r {
        binom = binom * (n as u128 - i) / (i + 1);
    }
    binom << r
}

/// Average of the cell's extreme points `m(i)·e_i / d_i`.
pub fn cell_centroid(g: &Graph, m: &CellSign) -> Result<Vec<f64>> {
    check_cell(g, m)?;
    let k = m.0.iter().filter(|&&s| s != 0).count() as f64;
    m.0.iter()
        .enumerate()
        .map(|(i, &s)| match (s, g.degree(i)) {
            (0, _) => Ok(0.0),
            (_, 0) => Err(Error::InvalidParameter(format!("vertex {i} is isolated"))),
            (s, d) => Ok(s as f64 / (d as f64 * k)),
        })
        .collect()
}

fn check_cell(g: &Graph, m: &CellSign) -> Result<()> {
    if m.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: m.len() });
    }
    Ok(())
}

/// Whether the whole cell lies in π: `|δ₊(m) − δ₋(m)| ≤ δ₀(m)`.
pub fn cell_in_pi(g: &Graph, m: &CellSign) -> Result<bool> {
    check_cell(g, m)?;
    let s = split_by_signs(g, &m.0);
    Ok(s.vol_positive.abs_diff(s.vol_negative) <= s.vol_zero)
}

fn decode(n: usize, mut code: u64) -> Vec<i8> {
    let mut m = vec![0i8; n];
    for slot in m.iter_mut().rev() {
        *slot = (code % 3) as i8 - 1;
        code /= 3;
    }
    m
}

/// All cells of π, in base-3 code order. Requires `n <= max_n`.
pub fn enumerate_pi_cells(g: &Graph, max_n: usize) -> Result<Vec<CellSign>> {
    let n = g.n();
    if n > max_n || n > 40 {
        return Err(Error::TooLarge { n, max: max_n.min(40) });
    }
    let total = 3u64.pow(n as u32);
    let zero_code = (total - 1) / 2;
    let cells = (0..total)
        .into_par_iter()
        .filter(|&c| c != zero_code)
        .filter_map(|c| {
            let m = CellSign(decode(n, c));
            cell_in_pi(g, &m).unwrap().then_some(m)
        })
        .collect();
    Ok(cells)
}

/// A π-cell is maximal when no zero entry can be switched on without leaving π.
fn is_maximal(g: &Graph, m: &CellSign) -> bool {
    let s = split_by_signs(g, &m.0);
    let total = g.total_volume();
    m.0.iter().enumerate().filter(|(_, &v)| v == 0).all(|(i, _)| {
        let d = g.degree(i);
        d > 0 && 2 * (s.vol_positive + d) > total && 2 * (s.vol_negative + d) > total
    })
}

/// Exact `min_{x∈π} I(x)` by solving the cell LP on every maximal π-cell
/// (closures of smaller cells are faces of maximal ones), one per `±m` pair.
pub fn min_over_pi_by_cells(g: &Graph) -> Result<(Ratio, CellMinimum)> {
    let cells = enumerate_pi_cells(g, MAX_ENUMERATION_N)?;
    let candidates: Vec<&CellSign> = cells.iter().filter(|m| **m == m.canonical() && is_maximal(g, m)).collect();
    let results: Vec<CellMinimum> =
        candidates.par_iter().map(|m| solvers::min_cell(g, m)).collect::<Result<_>>()?;
    results
        .into_iter()
        .min_by_key(|r| r.value)
        .map(|r| (r.value, r))
        .ok_or_else(|| Error::Internal("π has no cells".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{in_pi, norm_1d};
    use crate::graph::Family;
    use proptest::prelude::*;

    fn p4() -> Graph {
        Family::Path(4).build().unwrap()
    }

    fn cell(v: &[i8]) -> CellSign {
        CellSign::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cell_of_examples() {
        let g = p4();
        assert_eq!(cell_of(&g, &[1.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]).unwrap(), cell(&[1, 1, 0, 0]));
        assert_eq!(cell_of(&g, &[-1.0 / 3.0, -1.0 / 3.0, 0.0, 0.0]).unwrap(), cell(&[-1, -1, 0, 0]));
        assert_eq!(cell_of(&g, &[0.2; 4]).unwrap(), cell(&[1; 4]));
        assert!(matches!(cell_of(&g, &[0.0; 4]), Err(Error::ZeroVector)));
    }

    #[test]
    fn dimensions_and_counts() {
        assert_eq!(cell(&[1, 1, 0, 0]).dimension(), 1);
        assert_eq!((cell_count(2, 0), cell_count(2, 1)), (4, 4));
        assert_eq!(cell_count(3, 2), 8);
        // brute-force count of sign vectors by support size
        for n in 1..=8usize {
            let mut by_dim = vec![0u128; n];
            for c in 0..3u64.pow(n as u32) {
                let m = decode(n, c);
                let nz = m.iter().filter(|&&s| s != 0).count();
                if nz > 0 {
                    by_dim[nz - 1] += 1;
                }
            }
            for (k, &count) in by_dim.iter().enumerate() {
                assert_eq!(cell_count(n, k), count);
            }
            assert_eq!(by_dim.iter().sum::<u128>(), 3u128.pow(n as u32) - 1);
        }
    }

    #[test]
    fn centroid_examples() {
        let g = p4();
        assert_eq!(cell_centroid(&g, &cell(&[1, 0, 0, 0])).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
        let c = cell_centroid(&g, &cell(&[1, 1, 0, 0])).unwrap();
        assert_eq!(c, vec![0.5, 0.25, 0.0, 0.0]);
        let neg = cell_centroid(&g, &cell(&[-1, -1, 0, 0])).unwrap();
        assert_eq!(neg, c.iter().map(|v| -v).collect::<Vec<_>>());
    }

    #[test]
    fn centroid_round_trips_through_cell_of() {
        for n in 2..=6 {
            let g = Family::Path(n).build().unwrap();
            for code in 0..3u64.pow(n as u32) {
                let m = decode(n, code);
                if m.iter().all(|&s| s == 0) {
                    continue;
                }
                let m = CellSign(m);
                let c = cell_centroid(&g, &m).unwrap();
                assert_eq!(cell_of(&g, &c).unwrap(), m);
                let constraint: f64 = (0..n).map(|i| g.degree(i) as f64 * m.0[i] as f64 * c[i]).sum();
                assert!((constraint - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pi_cells() {
        let g = p4();
        assert!(!cell_in_pi(&g, &cell(&[1; 4])).unwrap());
        assert!(cell_in_pi(&g, &cell(&[1, 1, 0, 0])).unwrap());
        for n in 2..=6 {
            let g = Family::Path(n).build().unwrap();
            let count = enumerate_pi_cells(&g, MAX_ENUMERATION_N).unwrap().len() as u64;
            assert!(count >= 3u64.pow(n.div_ceil(2) as u32) - 1, "P{n}: {count}");
        }
        let big = Family::Path(17).build().unwrap();
        assert!(matches!(enumerate_pi_cells(&big, MAX_ENUMERATION_N), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn keys_identify_opposite_cells() {
        let m = cell(&[1, 0, -1, 1]);
        assert_eq!(m.key(), m.negated().key());
        assert_ne!(m.key(), cell(&[1, 0, 1, 1]).key());
        assert_eq!(m.to_string(), "[+0, -2, +3]");
    }

    #[test]
    fn min_over_cells_matches_known_values() {
        let (h, _) = min_over_pi_by_cells(&p4()).unwrap();
        assert_eq!(h, Ratio::new(1, 3));
        let (h, _) = min_over_pi_by_cells(&Family::Petersen.build().unwrap()).unwrap();
        assert_eq!(h, Ratio::new(1, 3));
    }

    proptest! {
        #[test]
        fn pi_is_a_union_of_cells(
            (g, x) in crate::functional::tests::graph_and_vector(),
            jitter in proptest::collection::vec(0.5f64..1.5, 8),
        ) {
            let y: Vec<f64> = x.iter().zip(&jitter).map(|(a, b)| a * b).collect();
            let norm = norm_1d(&g, &y).unwrap();
            prop_assume!(norm > 0.0);
            let y: Vec<f64> = y.iter().map(|v| v / norm).collect();
            let m = cell_of(&g, &y).unwrap();
            prop_assert_eq!(in_pi(&g, &y).unwrap(), cell_in_pi(&g, &m).unwrap());
        }
    }
}
