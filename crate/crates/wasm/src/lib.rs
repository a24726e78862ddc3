//! Browser bindings: every export takes and returns JSON strings so the page
//! needs no generated glue beyond `wasm-bindgen` itself.

use std::f64::consts::PI;

use cheeger::bench::derive_seed;
use cheeger::methods::InitScheme;
use cheeger::oracle::cheeger_brute;
use cheeger::{Error, Family, Graph, Method, MethodOptions, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

/// Largest graph the page will enumerate exactly.
const MAX_EXACT_N: usize = 20;

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct GraphJson {
    pub name: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Unit-square coordinates, one per vertex.
    pub layout: Vec<(f64, f64)>,
}

#[derive(Serialize, Debug)]
pub struct ExactJson {
    pub h: String,
    pub h_float: f64,
    pub side: Vec<usize>,
    pub optimal_cuts: usize,
}

#[derive(Serialize, Debug)]
pub struct RunJson {
    pub method: String,
    pub lambdas: Vec<f64>,
    pub h: String,
    pub h_float: f64,
    pub side: Vec<usize>,
    pub initial_side: Vec<usize>,
    pub termination: String,
    pub iterations: usize,
}

fn circle(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / n as f64 - PI / 2.0;
            (0.5 + 0.42 * a.cos(), 0.5 + 0.42 * a.sin())
        })
        .collect()
}

fn layout(family: Family, n: usize) -> Vec<(f64, f64)> {
    match family {
        Family::Petersen => (0..10)
            .map(|i| {
                let r = if i < 5 { 0.42 } else { 0.2 };
                let a = 2.0 * PI * (i % 5) as f64 / 5.0 - PI / 2.0;
                (0.5 + r * a.cos(), 0.5 + r * a.sin())
            })
            .collect(),
        Family::Path(_) => (0..n).map(|i| (0.05 + 0.9 * i as f64 / (n - 1) as f64, 0.5)).collect(),
        Family::Roach(k) => (0..n)
            .map(|i| {
                let col = i % (2 * k);
                let x = 0.05 + 0.9 * col as f64 / (2 * k - 1) as f64;
                (x, if i < 2 * k { 0.35 } else { 0.65 })
            })
            .collect(),
        Family::Complete(_) => circle(n),
    }
}

fn members(s: &VertexSet) -> Vec<usize> {
    s.iter().collect()
}

fn to_js(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn parse_graph(json: &str) -> Result<Graph, Error> {
    let g: GraphJson = serde_json::from_str(json).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Graph::new(g.n, g.edges)
}

pub fn generate_graph(family: &str, size: usize) -> Result<GraphJson, Error> {
    let fam = match family {
        "petersen" => Family::Petersen,
        "path" => Family::Path(size),
        "complete" => Family::Complete(size),
        "roach" if size.is_multiple_of(4) => Family::Roach(size / 4),
        "roach" => return Err(Error::InvalidParameter("roach size must be a multiple of 4".into())),
        other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    };
    let g = fam.build()?;
    Ok(GraphJson { name: fam.name(), n: g.n(), edges: g.edges().to_vec(), layout: layout(fam, g.n()) })
}

pub fn exact_cut(graph_json: &str) -> Result<ExactJson, Error> {
    let g = parse_graph(graph_json)?;
    if g.n() > MAX_EXACT_N {
        return Err(Error::TooLarge { n: g.n(), max: MAX_EXACT_N });
    }
    let res = cheeger_brute(&g)?;
    let side = res.cuts.first().map(|c| members(&c.smaller_side(&g))).unwrap_or_default();
    Ok(ExactJson { h: res.h.to_string(), h_float: res.h.to_f64(), side, optimal_cuts: res.cuts.len() })
}

pub fn run(graph_json: &str, method: &str, init: &str, seed: u64, index: u64) -> Result<RunJson, Error> {
    let g = parse_graph(graph_json)?;
    let method: Method = method.parse()?;
    let scheme: InitScheme = init.parse()?;
    let (x0, _, start) = scheme.draw(&g, &mut ChaCha8Rng::seed_from_u64(derive_seed(seed, index)))?;
    let t = method.run(&g, &x0, &MethodOptions::default())?;
    Ok(RunJson {
        method: method.name().to_uppercase(),
        lambdas: t.lambdas(),
        h: t.h().to_string(),
        h_float: t.h().to_f64(),
        side: members(&t.cut.side),
        initial_side: members(&start),
        termination: t.termination.to_string(),
        iterations: t.outer_iters,
    })
}

/// Benchmark graph with a drawing layout.
#[wasm_bindgen]
pub fn generate(family: &str, size: usize) -> Result<String, JsError> {
    let g = generate_graph(family, size).map_err(to_js)?;
    serde_json::to_string(&g).map_err(to_js)
}

/// Exact Cheeger constant and one optimal side.
#[wasm_bindgen]
pub fn exact(graph_json: &str) -> Result<String, JsError> {
    serde_json::to_string(&exact_cut(graph_json).map_err(to_js)?).map_err(to_js)
}

/// One outer method from seeded initialization `index`.
#[wasm_bindgen]
pub fn run_method(graph_json: &str, method: &str, init: &str, seed: u64, index: u64) -> Result<String, JsError> {
    serde_json::to_string(&run(graph_json, method, init, seed, index).map_err(to_js)?).map_err(to_js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_round_trips_through_json() {
        let g = generate_graph("roach", 12).unwrap();
        assert_eq!(g.n, 12);
        assert_eq!(g.layout.len(), 12);
        let back: GraphJson = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!((back.n, &back.edges), (g.n, &g.edges));
        assert!(generate_graph("roach", 10).is_err());
        assert!(generate_graph("star", 5).is_err());
    }

    #[test]
    fn exact_and_run_on_petersen() {
        let json = serde_json::to_string(&generate_graph("petersen", 0).unwrap()).unwrap();
        let e = exact_cut(&json).unwrap();
        assert_eq!(e.h, "1/3");
        assert_eq!(e.side.len(), 5);
        let r = run(&json, "cd1", "vector", 42, 0).unwrap();
        assert!(r.h_float >= 1.0 / 3.0 - 1e-12);
        assert!(r.lambdas.windows(2).all(|w| w[1] <= w[0] + 1e-9));
        assert!(run(&json, "cd9", "vector", 42, 0).is_err());
        assert!(exact_cut("{\"n\": 2}").is_err());
    }

    #[test]
    fn layouts_stay_in_unit_square() {
        for (f, n) in [("petersen", 10), ("path", 7), ("complete", 6), ("roach", 20)] {
            for (x, y) in generate_graph(f, n).unwrap().layout {
                assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
            }
        }
    }
}
