//! The continuous side: `I(x)`, `‖x‖_{1,d}`, `F = I/‖·‖_{1,d}`, the
//! degree-weighted median and the feasible set π.
//!
//! Vertex functions are plain `&[f64]` slices indexed by vertex.

use crate::graph::{Graph, VertexSet};
use crate::ratio::parse_rational;
use crate::{Error, Rational, Result};

/// Entries with `|x_i| <= ZERO_TOL * max_j |x_j|` count as zero.
pub const ZERO_TOL: f64 = 1e-8;

pub(crate) fn check_len(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), found: x.len() });
    }
    Ok(())
}

/// Absolute threshold below which an entry of `x` is classified as zero.
pub fn zero_threshold(x: &[f64]) -> f64 {
    ZERO_TOL * x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Sign of every entry under the relative zero tolerance.
pub fn signs(x: &[f64]) -> Vec<i8> {
    let thr = zero_threshold(x);
    x.iter()
        .map(|&v| {
            if v.abs() <= thr {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// `I(x) = Σ_{(i,j)∈E} |x_i − x_j|`.
pub fn tv_value(g: &Graph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    Ok(tv_unchecked(g, x))
}

pub(crate) fn tv_unchecked(g: &Graph, x: &[f64]) -> f64 {
    g.edges().iter().map(|&(u, v)| (x[u] - x[v]).abs()).sum()
}

/// `‖x‖_{1,d} = Σ d_i |x_i|`.
pub fn norm_1d(g: &Graph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    Ok(norm_1d_unchecked(g, x))
}

pub(crate) fn norm_1d_unchecked(g: &Graph, x: &[f64]) -> f64 {
    x.iter().zip(g.degrees()).map(|(v, &d)| d as f64 * v.abs()).sum()
}

/// `F(x) = I(x) / ‖x‖_{1,d}`; zero-homogeneous.
pub fn f_value(g: &Graph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    let norm = norm_1d_unchecked(g, x);
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(tv_unchecked(g, x) / norm)
}

/// The degree-weighted median: a closed interval, possibly a single point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MedianInterval {
    pub lo: f64,
    pub hi: f64,
}

impl MedianInterval {
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Argmin set of `t ↦ Σ d_i |t − x_i|`.
///
/// The function is piecewise linear with breakpoints at the `x_i`; walking the
/// sorted breakpoints with cumulative degree sums finds the first breakpoint
/// where the slope turns nonnegative. A zero slope there widens the answer to
/// the next breakpoint carrying positive degree.
pub fn weighted_median(g: &Graph, x: &[f64]) -> Result<MedianInterval> {
    check_len(g, x)?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let total = g.total_volume();
    if total == 0 {
        return Ok(MedianInterval { lo: x[order[0]], hi: x[order[g.n() - 1]] });
    }
    let mut cum = 0;
    for (k, &i) in order.iter().enumerate() {
        cum += g.degree(i);
        if 2 * cum >= total && g.degree(i) > 0 {
            let lo = x[i];
            if 2 * cum > total {
                return Ok(MedianInterval { lo, hi: lo });
            }
            let hi = order[k + 1..].iter().find(|&&j| g.degree(j) > 0).map_or(lo, |&j| x[j]);
            return Ok(MedianInterval { lo, hi });
        }
    }
    unreachable!("cumulative degree reaches the total volume")
}

/// Positive, zero and negative supports of `x` with their volumes δ₊, δ₀, δ₋.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSplit {
    pub positive: VertexSet,
    pub zero: VertexSet,
    pub negative: VertexSet,
    pub vol_positive: usize,
    pub vol_zero: usize,
    pub vol_negative: usize,
}

pub fn support_split(g: &Graph, x: &[f64]) -> Result<SupportSplit> {
    check_len(g, x)?;
    Ok(split_by_signs(g, &signs(x)))
}

pub(crate) fn split_by_signs(g: &Graph, m: &[i8]) -> SupportSplit {
    let n = g.n();
    let mut s = SupportSplit {
        positive: VertexSet::empty(n),
        zero: VertexSet::empty(n),
        negative: VertexSet::empty(n),
        vol_positive: 0,
        vol_zero: 0,
        vol_negative: 0,
    };
    for (i, &mi) in m.iter().enumerate() {
        let d = g.degree(i);
        match mi {
            1 => {
                s.positive.insert(i);
                s.vol_positive += d;
            }
            -1 => {
                s.negative.insert(i);
                s.vol_negative += d;
            }
            _ => {
                s.zero.insert(i);
                s.vol_zero += d;
            }
        }
    }
    s
}

/// Membership in the cone over π: `δ₊ ≤ δ/2` and `δ₋ ≤ δ/2`.
///
/// The normalization `‖x‖_{1,d} = 1` is not checked here.
pub fn in_pi(g: &Graph, x: &[f64]) -> Result<bool> {
    let s = support_split(g, x)?;
    Ok(balanced(g, &s))
}

pub(crate) fn balanced(g: &Graph, s: &SupportSplit) -> bool {
    2 * s.vol_positive <= g.total_volume() && 2 * s.vol_negative <= g.total_volume()
}

/// Shifts `x` by the midpoint of its weighted median and rescales to unit
/// `‖·‖_{1,d}`; the result lies in π.
pub fn project_to_pi(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    let med = weighted_median(g, x)?;
    let alpha = med.midpoint();
    let mut y: Vec<f64> = x.iter().map(|v| v - alpha).collect();
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(alpha.abs());
    // entries equal to the median up to rounding become exact zeros
    for v in &mut y {
        if v.abs() <= 4.0 * f64::EPSILON * scale {
            *v = 0.0;
        }
    }
    let norm = norm_1d_unchecked(g, &y);
    if norm == 0.0 || norm <= ZERO_TOL * scale {
        return Err(Error::ConstantVector);
    }
    y.iter_mut().for_each(|v| *v /= norm);
    Ok(y)
}

/// Data lines of a vector file with their 1-based line numbers.
fn vector_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads a vector file: one value per line, `#` starts a comment.
pub fn read_vector(text: &str) -> Result<Vec<f64>> {
    vector_lines(text)
        .map(|(line, l)| match l.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Parse { line, msg: format!("expected a finite number, found {l:?}") }),
        })
        .collect()
}

/// Like [`read_vector`] but exact; entries may be decimals or `p/q`.
pub fn read_exact_vector(text: &str) -> Result<Vec<Rational>> {
    vector_lines(text)
        .map(|(line, l)| parse_rational(l).map_err(|e| Error::Parse { line, msg: e.to_string() }))
        .collect()
}

pub fn write_vector(x: &[f64]) -> String {
    x.iter().map(|v| format!("{v:e}\n")).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::Family;
    use proptest::prelude::*;

    fn p4() -> Graph {
        Family::Path(4).build().unwrap()
    }

    /// Argmin set of Σ d_i|t − x_i| restricted to the breakpoints.
    fn median_oracle(g: &Graph, x: &[f64]) -> (f64, Vec<f64>) {
        let f = |t: f64| x.iter().zip(g.degrees()).map(|(xi, &d)| d as f64 * (t - xi).abs()).sum::<f64>();
        let best = x.iter().map(|&t| f(t)).fold(f64::INFINITY, f64::min);
        let argmins = x.iter().copied().filter(|&t| f(t) <= best + 1e-12).collect();
        (best, argmins)
    }

    #[test]
    fn tv_examples() {
        let g = p4();
        assert_eq!(tv_value(&g, &[2.0; 4]).unwrap(), 0.0);
        assert_eq!(tv_value(&g, &[1.0, 1.0, 0.0, 0.0]).unwrap(), 1.0);
        let p = Family::Petersen.build().unwrap();
        let ind: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { 0.0 }).collect();
        assert_eq!(tv_value(&p, &ind).unwrap(), 5.0);
        assert!(matches!(tv_value(&g, &[1.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn norm_and_quotient() {
        let g = p4();
        let x = [1.0, 1.0, 0.0, 0.0];
        assert_eq!(norm_1d(&g, &x).unwrap(), 3.0);
        assert!((f_value(&g, &x).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let c = [1.0 / 6.0; 4];
        assert!((norm_1d(&g, &c).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(f_value(&g, &c).unwrap(), 0.0);
        assert!(matches!(f_value(&g, &[0.0; 4]), Err(Error::ZeroVector)));
    }

    #[test]
    fn median_examples() {
        let g = p4();
        assert_eq!(weighted_median(&g, &[0.7; 4]).unwrap(), MedianInterval { lo: 0.7, hi: 0.7 });
        let m = weighted_median(&g, &[0.4, -0.1, 0.2, -0.3]).unwrap();
        assert_eq!(m, MedianInterval { lo: -0.1, hi: 0.2 });
        let p3 = Family::Path(3).build().unwrap();
        assert_eq!(weighted_median(&p3, &[3.0, 1.0, 2.0]).unwrap(), MedianInterval { lo: 1.0, hi: 2.0 });
    }

    #[test]
    fn pi_membership() {
        let g = p4();
        assert!(in_pi(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(!in_pi(&g, &[1.0 / 6.0; 4]).unwrap());
        let x = [0.4, -0.1, 0.2, -0.3];
        assert!(in_pi(&g, &x).unwrap());
        assert!(weighted_median(&g, &x).unwrap().contains(0.0));
    }

    #[test]
    fn projection_examples() {
        let g = p4();
        let r = project_to_pi(&g, &[1.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(r, vec![0.0, 0.0, 0.0, -1.0]);
        let x = [0.4, -0.1, 0.2, -0.3];
        let r = project_to_pi(&g, &x).unwrap();
        // median [-0.1, 0.2], midpoint 0.05
        let shifted: Vec<f64> = x.iter().map(|v| v - 0.05).collect();
        let norm = norm_1d(&g, &shifted).unwrap();
        for (a, b) in r.iter().zip(&shifted) {
            assert!((a - b / norm).abs() < 1e-15);
        }
        assert!(matches!(project_to_pi(&g, &[3.0; 4]), Err(Error::ConstantVector)));
    }

    #[test]
    fn support_split_examples() {
        let g = p4();
        let s = support_split(&g, &[0.0; 4]).unwrap();
        assert_eq!(s.zero, VertexSet::full(4));
        let s = support_split(&g, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((s.vol_positive, s.vol_zero, s.vol_negative), (3, 3, 0));
        let t = support_split(&g, &[-1.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!((t.positive, t.negative), (s.negative, s.positive));
    }

    #[test]
    fn zero_classification_is_relative() {
        assert_eq!(signs(&[1.0, 1e-9, -1e-7]), vec![1, 0, -1]);
        assert_eq!(signs(&[1e-12, 1e-21]), vec![1, 0]);
    }

    /// Random simple graph on 3..9 vertices with at least one edge, plus a
    /// vector on a coarse grid so ties occur often.
    pub(crate) fn graph_and_vector() -> impl Strategy<Value = (Graph, Vec<f64>)> {
        (3usize..9)
            .prop_flat_map(|n| {
                let m = n * (n - 1) / 2;
                (Just(n), proptest::collection::vec(any::<bool>(), m), proptest::collection::vec(-3i32..4, n))
            })
            .prop_filter_map("needs an edge", |(n, keep, vals)| {
                let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                let edges: Vec<_> = pairs.zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
                if edges.is_empty() {
                    return None;
                }
                let g = Graph::new(n, edges).ok()?;
                Some((g, vals.into_iter().map(|v| v as f64 * 0.25).collect()))
            })
    }

    proptest! {
        #[test]
        fn median_matches_breakpoint_oracle((g, x) in graph_and_vector()) {
            let m = weighted_median(&g, &x).unwrap();
            let (best, argmins) = median_oracle(&g, &x);
            let f = |t: f64| x.iter().zip(g.degrees()).map(|(xi, &d)| d as f64 * (t - xi).abs()).sum::<f64>();
            for t in [m.lo, m.midpoint(), m.hi] {
                prop_assert!((f(t) - best).abs() < 1e-9);
            }
            for t in argmins {
                prop_assert!(m.contains(t));
            }
        }

        #[test]
        fn pi_iff_zero_in_median((g, x) in graph_and_vector()) {
            let norm = norm_1d(&g, &x).unwrap();
            prop_assume!(norm > 0.0);
            let y: Vec<f64> = x.iter().map(|v| v / norm).collect();
            prop_assert_eq!(in_pi(&g, &y).unwrap(), weighted_median(&g, &y).unwrap().contains(0.0));
        }

        #[test]
        fn homogeneity_and_translation((g, x) in graph_and_vector(), k in 0.1f64..5.0, c in -2.0f64..2.0) {
            let tv = tv_value(&g, &x).unwrap();
            let kx: Vec<f64> = x.iter().map(|v| k * v).collect();
            prop_assert!((tv_value(&g, &kx).unwrap() - k * tv).abs() < 1e-9);
            let shifted: Vec<f64> = x.iter().map(|v| v + c).collect();
            prop_assert!((tv_value(&g, &shifted).unwrap() - tv).abs() < 1e-9);
            if norm_1d(&g, &x).unwrap() > 0.0 {
                let neg: Vec<f64> = x.iter().map(|v| -2.0 * v).collect();
                prop_assert!((f_value(&g, &neg).unwrap() - f_value(&g, &x).unwrap()).abs() < 1e-12);
            }
        }

        #[test]
        fn indicators_give_boundary_over_volume((g, x) in graph_and_vector()) {
            let s = VertexSet::from_indices(g.n(), (0..g.n()).filter(|&i| x[i] > 0.0));
            let ind: Vec<f64> = (0..g.n()).map(|i| if s.contains(i) { 1.0 } else { 0.0 }).collect();
            prop_assert_eq!(tv_value(&g, &ind).unwrap(), g.boundary_size(&s) as f64);
            prop_assert_eq!(norm_1d(&g, &ind).unwrap(), g.volume(&s) as f64);
            let comp = s.complement();
            prop_assert_eq!(g.boundary_size(&s), g.boundary_size(&comp));
            prop_assert_eq!(g.volume(&s) + g.volume(&comp), g.total_volume());
        }

        #[test]
        fn projection_lands_in_pi((g, x) in graph_and_vector()) {
            if let Ok(r) = project_to_pi(&g, &x) {
                prop_assert!(in_pi(&g, &r).unwrap());
                prop_assert!((norm_1d(&g, &r).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vector_files() {
        let text = "# x\n0.5\n\n-1e-3  # tail\n2\n";
        assert_eq!(read_vector(text).unwrap(), vec![0.5, -1e-3, 2.0]);
        assert_eq!(read_vector(&write_vector(&[0.1, -3.0, 1e-300])).unwrap(), vec![0.1, -3.0, 1e-300]);
        assert!(matches!(read_vector("1\nx\n"), Err(Error::Parse { line: 2, .. })));
        assert!(read_vector("inf\n").is_err());
        let exact = read_exact_vector("1/9\n0.25\n-2\n").unwrap();
        assert_eq!(exact, vec![Rational::new(1, 9), Rational::new(1, 4), Rational::from_integer(-2)]);
        assert!(matches!(read_exact_vector("1/0\n"), Err(Error::Parse { line: 1, .. })));
    }
}
