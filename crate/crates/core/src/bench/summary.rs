use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use super::RunRecord;
use crate::methods::Method;
use crate::{Error, Ratio, Result};

/// Method pairs compared in the pairwise table, in display order.
pub const COMPARED_PAIRS: [(Method, Method); 6] = [
    (Method::Ip, Method::Cd1),
    (Method::Sd, Method::Cd2),
    (Method::Sd, Method::Cd1),
    (Method::Cd1, Method::Cd2),
    (Method::Sd, Method::Ip),
    (Method::Ip, Method::Cd2),
];

#[derive(Clone, Debug, PartialEq)]
pub struct MethodStats {
    pub method: Method,
    pub runs: usize,
    pub avg_iters: f64,
    /// Percent of runs with h̃ = h exactly; `None` when h is unknown.
    pub pct_exact: Option<f64>,
}

/// Percentages of shared initializations with `h̃_a < h̃_b`, `>` and `=`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairStats {
    pub a: Method,
    pub b: Method,
    pub runs: usize,
    pub less: f64,
    pub greater: f64,
    pub equal: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryTable {
    pub graph: String,
    pub h: Option<Ratio>,
    /// In [`Method::ALL`] order, present methods only.
    pub methods: Vec<MethodStats>,
    /// [`COMPARED_PAIRS`] restricted to present methods.
    pub pairs: Vec<PairStats>,
}

fn pct(count: usize, total: usize) -> f64 {
    100.0 * count as f64 / total as f64
}

/// Aggregates records of a single graph. Only exact ratio comparisons enter.
pub fn summarize(records: &[RunRecord], h: Option<Ratio>) -> Result<SummaryTable> {
    let first = records.first().ok_or_else(|| Error::InvalidParameter("no records to summarize".into()))?;
    if let Some(r) = records.iter().find(|r| r.graph != first.graph) {
        return Err(Error::InvalidParameter(format!("mixed graphs {:?} and {:?}", first.graph, r.graph)));
    }
    let mut by_method: BTreeMap<Method, BTreeMap<u64, &RunRecord>> = BTreeMap::new();
    for r in records {
        by_method.entry(r.method).or_default().insert(r.init_index, r);
    }
    let methods = by_method
        .iter()
        .map(|(&method, runs)| {
            let n = runs.len();
            let iters: usize = runs.values().map(|r| r.outer_iters).sum();
            MethodStats {
                method,
                runs: n,
                avg_iters: iters as f64 / n as f64,
                pct_exact: h.map(|h| pct(runs.values().filter(|r| r.h == h).count(), n)),
            }
        })
        .collect();
    let pairs = COMPARED_PAIRS
        .iter()
        .filter_map(|&(a, b)| {
            let (ra, rb) = (by_method.get(&a)?, by_method.get(&b)?);
            let mut counts = [0usize; 3];
            for (i, x) in ra {
                if let Some(y) = rb.get(i) {
                    counts[match x.h.cmp(&y.h) {
                        Ordering::Less => 0,
                        Ordering::Greater => 1,
                        Ordering::Equal => 2,
                    }] += 1;
                }
            }
            let n: usize = counts.iter().sum();
            (n > 0).then(|| PairStats {
                a,
                b,
                runs: n,
                less: pct(counts[0], n),
                greater: pct(counts[1], n),
                equal: pct(counts[2], n),
            })
        })
        .collect();
    Ok(SummaryTable { graph: first.graph.clone(), h, methods, pairs })
}

impl SummaryTable {
    /// Average iterations and exact-hit percentages, one column per method.
    pub fn render_iterations(&self) -> String {
        let mut s = String::new();
        let names: Vec<String> = self.methods.iter().map(|m| m.method.name().to_uppercase()).collect();
        let h = self.h.map_or("unknown".to_string(), |h| h.to_string());
        writeln!(s, "graph {} (h = {h})", self.graph).unwrap();
        write!(s, "{:<22}", "").unwrap();
        for n in &names {
            write!(s, "{n:>9}").unwrap();
        }
        s.push('\n');
        write!(s, "{:<22}", "avg iterations").unwrap();
        for m in &self.methods {
            write!(s, "{:>9.3}", m.avg_iters).unwrap();
        }
        s.push('\n');
        write!(s, "{:<22}", "percent h~ = h").unwrap();
        for m in &self.methods {
            match m.pct_exact {
                Some(p) => write!(s, "{p:>9.1}").unwrap(),
                None => write!(s, "{:>9}", "-").unwrap(),
            }
        }
        s.push('\n');
        s
    }

    /// Pairwise `<`, `>`, `=` percentages.
    pub fn render_pairs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{:<12}{:>9}{:>9}{:>9}", "pair", "<", ">", "=").unwrap();
        for p in &self.pairs {
            let label = format!("{} vs {}", p.a.name().to_uppercase(), p.b.name().to_uppercase());
            writeln!(s, "{label:<12}{:>9.1}{:>9.1}{:>9.1}", p.less, p.greater, p.equal).unwrap();
        }
        s
    }
}
