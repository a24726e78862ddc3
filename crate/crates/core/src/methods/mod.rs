//! Outer iterations: inverse power (IP), steepest descent (SD) and the two
//! cell-descent variants (CD1, CD2).

mod cell_descent;
mod descent;

pub use cell_descent::{run_cd1, run_cd2};
pub use descent::{run_ip, run_sd};

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::cells::{cell_of, CellSign};
use crate::functional::{in_pi, project_to_pi, signs, support_split};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{cut_ratio, Cut};
use crate::solvers::SolverOptions;
use crate::{Error, Ratio, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ip,
    Sd,
    Cd1,
    Cd2,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Ip, Method::Sd, Method::Cd1, Method::Cd2];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ip => "ip",
            Method::Sd => "sd",
            Method::Cd1 => "cd1",
            Method::Cd2 => "cd2",
        }
    }

    /// Runs the method from `x0` (CD methods start from `cell_of(x0)`).
    pub fn run(self, g: &Graph, x0: &[f64], opts: &MethodOptions) -> Result<RunTrace> {
        match self {
            Method::Ip => run_ip(g, x0, opts),
            Method::Sd => run_sd(g, x0, opts),
            Method::Cd1 => run_cd1(g, &cell_of(g, x0)?, opts),
            Method::Cd2 => run_cd2(g, &cell_of(g, x0)?, opts),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ip" => Ok(Method::Ip),
            "sd" => Ok(Method::Sd),
            "cd1" => Ok(Method::Cd1),
            "cd2" => Ok(Method::Cd2),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?} (expected ip, sd, cd1 or cd2)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MethodOptions {
    /// Prox scale for SD and CD2.
    pub c: f64,
    pub max_outer: usize,
    /// IP/SD stop once `λᵏ − λᵏ⁺¹` falls below this.
    pub stall_tol: f64,
    pub inner: SolverOptions,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions { c: 1.0, max_outer: 100, stall_tol: 1e-9, inner: SolverOptions::default() }
    }
}

impl MethodOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::InvalidParameter(format!("c must be positive, got {}", self.c)));
        }
        if self.max_outer == 0 || !(self.stall_tol >= 0.0) {
            return Err(Error::InvalidParameter("max_outer must be >= 1 and stall_tol >= 0".into()));
        }
        self.inner.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    ValueIncrease,
    CellRevisit,
    LambdaStall,
    IterationCap,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::ValueIncrease => "value-increase",
            Termination::CellRevisit => "cell-revisit",
            Termination::LambdaStall => "lambda-stall",
            Termination::IterationCap => "iteration-cap",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Termination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Termination::ValueIncrease, Termination::CellRevisit, Termination::LambdaStall, Termination::IterationCap]
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown termination reason {s:?}")))
    }
}

/// One accepted iterate.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub lambda: f64,
    /// Exact value, known for cell-descent iterates.
    pub lambda_exact: Option<Ratio>,
    /// Cell of a cell-descent iterate.
    pub cell: Option<CellSign>,
    /// Status of the inner solve that produced the next iterate.
    pub inner_converged: bool,
    pub inner_iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub method: Method,
    pub initial: Vec<f64>,
    pub initial_cell: CellSign,
    pub steps: Vec<StepRecord>,
    pub x: Vec<f64>,
    pub cut: Cut,
    /// Inner solves for IP/SD, traversed cells for CD.
    pub outer_iters: usize,
    pub termination: Termination,
}

impl RunTrace {
    /// The numerical Cheeger value h̃ of the final cut.
    pub fn h(&self) -> Ratio {
        self.cut.ratio
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.lambda).collect()
    }
}

/// A subgradient `v ∈ ∂‖x‖_{1,d}` with `(v, 1) = 0`:
/// `v_i = d_i·sign(x_i)` on the support and `d_i(δ₋ − δ₊)/δ₀` elsewhere.
pub fn choose_subgradient(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    let s = support_split(g, x)?;
    if s.positive.is_empty() && s.negative.is_empty() {
        return Err(Error::ZeroVector);
    }
    if !in_pi(g, x)? {
        return Err(Error::InvalidParameter("subgradient requires a point of π".into()));
    }
    let m = signs(x);
    let zero_value = if s.vol_zero == 0 {
        0.0
    } else {
        (s.vol_negative as f64 - s.vol_positive as f64) / s.vol_zero as f64
    };
    Ok((0..g.n())
        .map(|i| {
            let d = g.degree(i) as f64;
            match m[i] {
                0 => d * zero_value,
                s => d * s as f64,
            }
        })
        .collect())
}

/// A uniformly random nonempty proper subset mapped into π by the median
/// shift of its indicator. Returns the point, its cell and the subset.
pub fn random_initial<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<(Vec<f64>, CellSign, VertexSet)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    for _ in 0..100 {
        let s = VertexSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)));
        if s.is_empty() || s.len() == n {
            continue;
        }
        if let Ok(x) = initial_from_subset(g, &s) {
            let cell = cell_of(g, &x)?;
            return Ok((x, cell, s));
        }
    }
    let s = VertexSet::from_indices(n, [0]);
    let x = initial_from_subset(g, &s)?;
    let cell = cell_of(g, &x)?;
    Ok((x, cell, s))
}

/// A point with i.i.d. uniform entries in `[−1, 1]` mapped into π by the
/// median shift. Returns the point, its cell and `D₊` of the point.
pub fn random_initial_vector<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<(Vec<f64>, CellSign, VertexSet)> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    for _ in 0..100 {
        let raw: Vec<f64> = (0..g.n()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if let Ok(x) = project_to_pi(g, &raw) {
            let cell = cell_of(g, &x)?;
            let side = support_split(g, &x)?.positive;
            return Ok((x, cell, side));
        }
    }
    Err(Error::Internal("could not draw a nonconstant vector".into()))
}

/// How initial points are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InitScheme {
    /// Uniform nonempty proper subset `S`, start at the shifted `1_S`.
    #[default]
    Subset,
    /// Uniform random vector, start at its shifted self.
    Vector,
}

impl InitScheme {
    pub fn name(self) -> &'static str {
        match self {
            InitScheme::Subset => "subset",
            InitScheme::Vector => "vector",
        }
    }

    pub fn draw<R: Rng + ?Sized>(self, g: &Graph, rng: &mut R) -> Result<(Vec<f64>, CellSign, VertexSet)> {
        match self {
            InitScheme::Subset => random_initial(g, rng),
            InitScheme::Vector => random_initial_vector(g, rng),
        }
    }
}

impl fmt::Display for InitScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "subset" => Ok(InitScheme::Subset),
            "vector" => Ok(InitScheme::Vector),
            other => Err(Error::InvalidParameter(format!("unknown init scheme {other:?} (expected subset or vector)"))),
        }
    }
}

/// `project_to_pi(1_S)`.
pub fn initial_from_subset(g: &Graph, s: &VertexSet) -> Result<Vec<f64>> {
    let ind: Vec<f64> = (0..g.n()).map(|i| s.contains(i) as u8 as f64).collect();
    project_to_pi(g, &ind)
}

/// The better of the cuts `D₊(x)` and `D₋(x)`, by exact ratio; falls back to
/// the best threshold cut when neither is a proper nonempty subset.
pub fn round_to_cut(g: &Graph, x: &[f64]) -> Result<Cut> {
    let s = support_split(g, x)?;
    if s.positive.is_empty() && s.negative.is_empty() {
        return Err(Error::ZeroVector);
    }
    let mut best: Option<Cut> = None;
    for side in [s.positive, s.negative] {
        if side.is_empty() || side.len() == g.n() {
            continue;
        }
        if let Ok(ratio) = cut_ratio(g, &side) {
            if best.as_ref().is_none_or(|b| ratio < b.ratio) {
                best = Some(Cut { side, ratio });
            }
        }
    }
    if let Some(c) = best {
        return Ok(c);
    }
    sweep_cut(g, x)
}

/// Best cut `{i : x_i > t}` over thresholds between distinct sorted values.
pub fn sweep_cut(g: &Graph, x: &[f64]) -> Result<Cut> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
    let mut side = VertexSet::empty(n);
    let mut best: Option<Cut> = None;
    for k in 0..n - 1 {
        side.insert(order[k]);
        if x[order[k]] == x[order[k + 1]] {
            continue;
        }
        if let Ok(ratio) = cut_ratio(g, &side) {
            if best.as_ref().is_none_or(|b| ratio < b.ratio) {
                best = Some(Cut { side: side.clone(), ratio });
            }
        }
    }
    best.ok_or(Error::ConstantVector)
}
