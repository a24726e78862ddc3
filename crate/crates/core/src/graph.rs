//! Undirected simple graphs, the benchmark families and the edge-list format.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Membership mask over the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Bit `i` of `mask` is vertex `i`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        }
        s
    }

    /// Low 64 vertices as a bitmask.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "vertex {i} outside universe {}", self.n);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut c = Self::empty(self.n);
        for i in 0..self.n {
            if !self.contains(i) {
                c.insert(i);
            }
        }
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i))
    }

    /// Lowercase hex of `Σ 2^i` over members, most significant digit first.
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4).max(1);
        (0..digits)
            .rev()
            .map(|d| {
                let nib = (0..4).fold(0u32, |acc, b| acc | (self.contains(4 * d + b) as u32) << b);
                char::from_digit(nib, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<Self> {
        let mut s = Self::empty(n);
        for (d, c) in hex.chars().rev().enumerate() {
            let nib = c.to_digit(16)?;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let i = 4 * d + b;
                    if i >= n {
                        return None;
                    }
                    s.insert(i);
                }
            }
        }
        Some(s)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable undirected simple graph.
///
/// Edges are stored as `(u, v)` with `u < v`; `u` is the head of the oriented
/// edge, which fixes the incidence matrix `B` once and for all.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
    total_volume: usize,
}

impl Graph {
    /// Builds a canonical graph: endpoints ordered, duplicates removed.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut degrees = vec![0; n];
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &canon {
            degrees[u] += 1;
            degrees[v] += 1;
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Graph { n, total_volume: 2 * canon.len(), edges: canon, degrees, neighbors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// δ = Σ d_i.
    pub fn total_volume(&self) -> usize {
        self.total_volume
    }

    pub fn generate(family: Family) -> Result<Self> {
        family.build()
    }

    /// Number of edges with exactly one endpoint in `s`.
    pub fn boundary_size(&self, s: &VertexSet) -> usize {
        self.edges.iter().filter(|&&(u, v)| s.contains(u) != s.contains(v)).count()
    }

    pub fn volume(&self, s: &VertexSet) -> usize {
        s.iter().map(|i| self.degrees[i]).sum()
    }

    /// Maximal connected pieces of the subgraph induced by `restricted_to`
    /// (the whole graph when `None`), ordered by smallest member.
    pub fn connected_components(&self, restricted_to: Option<&VertexSet>) -> Vec<VertexSet> {
        let allowed = |i: usize| restricted_to.is_none_or(|r| r.contains(i));
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] || !allowed(start) {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.neighbors[u] {
                    if !seen[w] && allowed(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(None).len() == 1
    }

    /// Parses the edge-list text format: `#` comments, a header `n m`, then
    /// `m` lines `u v`.
    pub fn read_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header \"n m\"".into() })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(Error::Parse { line, msg: format!("more than the declared {m} edges") });
            }
            let [u, v] = parse_pair(line, l)?;
            if u >= n || v >= n {
                return Err(Error::Parse { line, msg: format!("vertex out of range for n = {n}") });
            }
            if u == v {
                return Err(Error::Parse { line, msg: format!("self-loop at vertex {u}") });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges).map_err(|e| Error::Parse { line: hline, msg: e.to_string() })
    }

    pub fn write_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n = {}, edges = {:?})", self.n, self.edges)
    }
}

fn parse_pair(line: usize, l: &str) -> Result<[usize; 2]> {
    let mut it = l.split_whitespace();
    let mut next = || {
        it.next()
            .ok_or_else(|| Error::Parse { line, msg: "expected two integers".into() })?
            .parse::<usize>()
            .map_err(|e| Error::Parse { line, msg: e.to_string() })
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: "trailing tokens".into() });
    }
    Ok(pair)
}

/// The benchmark graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Petersen,
    Path(usize),
    Complete(usize),
    /// `Roach(k)` has `4k` vertices.
    Roach(usize),
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Petersen => {
                let mut edges = Vec::with_capacity(15);
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                    edges.push((i, 5 + i));
                }
                Graph::new(10, edges)
            }
            Family::Path(n) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!("path needs n >= 2, got {n}")));
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Complete(n) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!("complete graph needs n >= 2, got {n}")));
                }
                Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            Family::Roach(k) => {
                if k < 1 {
                    return Err(Error::InvalidParameter("roach needs k >= 1".into()));
                }
                // Top row 0..2k, bottom row 2k..4k; rungs on the right half.
                let w = 2 * k;
                let rows = (1..w).flat_map(|c| [(c - 1, c), (w + c - 1, w + c)]);
                let rungs = (k..w).map(|c| (c, w + c));
                Graph::new(4 * k, rows.chain(rungs))
            }
        }
    }

    /// Short identifier used in file names and CSV rows.
    pub fn name(&self) -> String {
        match self {
            Family::Petersen => "petersen".into(),
            Family::Path(n) => format!("path{n}"),
            Family::Complete(n) => format!("complete{n}"),
            Family::Roach(k) => format!("roach{}", 4 * k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `petersen`, `path:N`, `complete:N` and `roach:K` (`4K` vertices).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s.as_str(), None),
        };
        let size = || -> Result<usize> {
            arg.ok_or_else(|| Error::InvalidParameter(format!("family {name:?} needs a size, e.g. {name}:10")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad size in {s:?}")))
        };
        match name {
            "petersen" => Ok(Family::Petersen),
            "path" => Ok(Family::Path(size()?)),
            "complete" => Ok(Family::Complete(size()?)),
            "roach" => Ok(Family::Roach(size()?)),
            _ => Err(Error::InvalidParameter(format!("unknown family {name:?}"))),
        }
    }
}
