use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cheeger::bench::{bench, derive_seed, emit_csv, exact_h, parse_csv, summarize, BenchConfig};
use cheeger::functional::{read_exact_vector, read_vector, write_vector};
use cheeger::methods::InitScheme;
use cheeger::oracle::{cheeger_brute, lap2_second, refine_connected, spectrum_enumerate, verify_eigenpair};
use cheeger::{Error, Family, Graph, Method, MethodOptions, Ratio, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "cheeger", version, about = "Cheeger cuts through the graph 1-Laplacian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a benchmark graph as an edge list.
    Gen {
        /// petersen, path, complete or roach (also accepts path:N, complete:N, roach:K).
        #[arg(long)]
        family: String,
        /// Number of vertices (a multiple of 4 for roach).
        #[arg(long)]
        size: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Cheeger constant and all optimal cuts by enumeration.
    Exact {
        /// Edge-list file or family spec such as path:10.
        graph: String,
        /// Also report the 2-Laplacian sweep-cut baseline.
        #[arg(long)]
        lap2: bool,
    },
    /// Every 1-Laplacian eigenvalue with a binary witness.
    Spectrum { graph: String },
    /// One method from one initial point, printing the iterates.
    Run {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "cd1")]
        method: Method,
        /// Start from this vector file instead of a seeded draw.
        #[arg(long, conflicts_with_all = ["seed", "index"])]
        vec: Option<PathBuf>,
        #[arg(long, env = "CHEEGER_SEED", default_value_t = 0)]
        seed: u64,
        /// Which seeded initialization to use.
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[command(flatten)]
        opts: RunOpts,
        /// Write the final iterate here.
        #[arg(long)]
        out_vec: Option<PathBuf>,
    },
    /// All methods from the same seeded initial cuts; CSV plus summary tables.
    Bench {
        #[arg(long)]
        graph: String,
        #[arg(long, value_delimiter = ',', default_value = "ip,sd,cd1,cd2")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 1000)]
        inits: usize,
        #[arg(long, env = "CHEEGER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Summary tables from a results CSV.
    Summary {
        csv: PathBuf,
        /// Graph for the exact "= h" column.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Check whether (mu, x) is an eigenpair of the 1-Laplacian.
    Verify {
        #[arg(long)]
        graph: String,
        /// One exact value per line (decimal or p/q).
        #[arg(long)]
        vec: PathBuf,
        #[arg(long)]
        mu: Ratio,
    },
}

#[derive(Args)]
struct RunOpts {
    /// subset or vector.
    #[arg(long, default_value = "subset")]
    init: InitScheme,
    /// Prox scale for SD and CD2.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 100)]
    max_outer: usize,
}

impl RunOpts {
    fn method_options(&self) -> MethodOptions {
        MethodOptions { c: self.c, max_outer: self.max_outer, ..MethodOptions::default() }
    }
}

/// Reads an edge-list file, or builds a family when no such file exists.
fn load_graph(spec: &str) -> Result<(Graph, String), Error> {
    let path = Path::new(spec);
    if path.exists() {
        let g = Graph::read_edge_list(&fs::read_to_string(path)?)?;
        let name: String = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".into())
            .chars()
            .filter(|c| !matches!(c, ',' | '"' | '\n'))
            .collect();
        return Ok((g, name));
    }
    let family: Family = spec
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{spec:?} is neither a file nor a graph family")))?;
    Ok((family.build()?, family.name()))
}

fn family_from_args(family: &str, size: Option<usize>) -> Result<Family, Error> {
    let need = || Error::InvalidParameter(format!("--size is required for {family}"));
    match (family, size) {
        ("petersen", _) => Ok(Family::Petersen),
        ("path", s) => Ok(Family::Path(s.ok_or_else(need)?)),
        ("complete", s) => Ok(Family::Complete(s.ok_or_else(need)?)),
        ("roach", s) => {
            let n = s.ok_or_else(need)?;
            if n == 0 || n % 4 != 0 {
                return Err(Error::InvalidParameter(format!("roach size must be a positive multiple of 4, got {n}")));
            }
            Ok(Family::Roach(n / 4))
        }
        (spec, None) => spec.parse(),
        (spec, Some(_)) => Err(Error::InvalidParameter(format!("--size cannot be combined with {spec:?}"))),
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn set_list(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn execute(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Gen { family, size, out } => {
            let g = family_from_args(&family, size)?.build()?;
            write_or_print(out.as_deref(), &g.write_edge_list())
        }
        Command::Exact { graph, lap2 } => {
            let (g, _) = load_graph(&graph)?;
            let res = cheeger_brute(&g)?;
            println!("{}", res.h);
            println!("decimal {:.12}", res.h.to_f64());
            for cut in &res.cuts {
                let refined = refine_connected(&g, cut);
                let note = if refined.side == cut.side { "" } else { " (refines to connected sides)" };
                println!("cut {}{note}", set_list(&cut.smaller_side(&g)));
            }
            if lap2 {
                let (l2, sweep) = lap2_second(&g)?;
                println!("lambda2 {l2:.12} sweep {} ({:.12})", sweep.ratio, sweep.ratio.to_f64());
            }
            Ok(())
        }
        Command::Spectrum { graph } => {
            let (g, _) = load_graph(&graph)?;
            for w in spectrum_enumerate(&g)? {
                println!("{} {:.12} {}", w.mu, w.mu.to_f64(), set_list(&w.support));
            }
            Ok(())
        }
        Command::Run { graph, method, vec, seed, index, opts, out_vec } => {
            let (g, _) = load_graph(&graph)?;
            let x0 = match vec {
                Some(p) => read_vector(&fs::read_to_string(p)?)?,
                None => opts.init.draw(&g, &mut ChaCha8Rng::seed_from_u64(derive_seed(seed, index)))?.0,
            };
            let t = method.run(&g, &x0, &opts.method_options())?;
            println!("method {} start cell {}", t.method, t.initial_cell);
            for (k, s) in t.steps.iter().enumerate() {
                let value = s.lambda_exact.map_or(format!("{:.12}", s.lambda), |r| format!("{r} ({:.12})", s.lambda));
                let cell = s.cell.as_ref().map_or(String::new(), |c| format!(" cell {c}"));
                let flag = if s.inner_converged { "" } else { " inner not converged" };
                println!("step {k} lambda {value}{cell}{flag}");
            }
            println!("termination {} after {} iterations", t.termination, t.outer_iters);
            println!("h~ {} ({:.12}) side {}", t.h(), t.h().to_f64(), set_list(&t.cut.side));
            if let Some(p) = out_vec {
                fs::write(p, write_vector(&t.x))?;
            }
            Ok(())
        }
        Command::Bench { graph, methods, inits, seed, out, jobs, opts } => {
            let (g, name) = load_graph(&graph)?;
            let mut cfg = BenchConfig::new(name, methods, inits, seed);
            cfg.init = opts.init;
            cfg.options = opts.method_options();
            cfg.jobs = jobs;
            let res = bench(&g, &cfg)?;
            if let Some(p) = out {
                fs::write(p, emit_csv(&res.records))?;
            }
            print!("{}\n{}", res.summary.render_iterations(), res.summary.render_pairs());
            Ok(())
        }
        Command::Summary { csv, graph } => {
            let records = parse_csv(&fs::read_to_string(csv)?)?;
            let h = match graph {
                Some(spec) => exact_h(&load_graph(&spec)?.0)?,
                None => None,
            };
            let s = summarize(&records, h)?;
            print!("{}\n{}", s.render_iterations(), s.render_pairs());
            Ok(())
        }
        Command::Verify { graph, vec, mu } => {
            let (g, _) = load_graph(&graph)?;
            let x = read_exact_vector(&fs::read_to_string(vec)?)?;
            let ok = verify_eigenpair(&g, mu, &x)?;
            println!("eigenpair: {}", if ok { "yes" } else { "no" });
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    // a panic is a broken internal invariant, same as Error::Internal
    match std::panic::catch_unwind(|| execute(cli.command)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
        Err(_) => ExitCode::from(2),
    }
}
