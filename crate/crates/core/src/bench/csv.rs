use std::fmt::Write;

use super::RunRecord;
use crate::{Error, Ratio, Result};

pub const CSV_HEADER: &str = "graph,method,master_seed,init_index,outer_iters,term_reason,h_num,h_den,h_float,cut_side_hex";

/// Records as CSV text, one row per record, in the given order.
pub fn emit_csv(records: &[RunRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.graph,
            r.method,
            r.master_seed,
            r.init_index,
            r.outer_iters,
            r.termination,
            r.h.num(),
            r.h.den(),
            r.h.to_f64(),
            r.cut_side_hex
        )
        .unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<RunRecord>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        Some((i, _)) => return Err(Error::Parse { line: i + 1, msg: format!("expected header {CSV_HEADER:?}") }),
        None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
    }
    lines
        .map(|(i, line)| {
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 10 {
                return Err(err(format!("expected 10 fields, found {}", f.len())));
            }
            let int = |k: usize, name: &str| f[k].parse::<u64>().map_err(|_| err(format!("bad {name} {:?}", f[k])));
            let den = int(7, "h_den")?;
            if den == 0 {
                return Err(err("h_den is zero".into()));
            }
            if f[9].is_empty() || !f[9].chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(err(format!("bad cut_side_hex {:?}", f[9])));
            }
            Ok(RunRecord {
                graph: f[0].to_string(),
                method: f[1].parse().map_err(|e: Error| err(e.to_string()))?,
                master_seed: int(2, "master_seed")?,
                init_index: int(3, "init_index")?,
                outer_iters: int(4, "outer_iters")? as usize,
                termination: f[5].parse().map_err(|e: Error| err(e.to_string()))?,
                h: Ratio::new(int(6, "h_num")?, den),
                cut_side_hex: f[9].to_string(),
            })
        })
        .collect()
}
