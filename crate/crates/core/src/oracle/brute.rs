use rayon::prelude::*;

use super::Cut;
use crate::graph::{Graph, VertexSet};
use crate::{Error, Ratio, Result};

pub const MAX_BRUTE_N: usize = 24;

/// Cheeger constant with every optimal cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheegerResult {
    pub h: Ratio,
    /// Optimal cuts, each listed once with the side holding vertex 0,
    /// ordered by side bitmask.
    pub cuts: Vec<Cut>,
}

/// Low bits enumerated sequentially inside one parallel chunk.
const CHUNK_BITS: usize = 12;

/// Exhaustive `h(G)` over the `2^(n−1) − 1` cuts whose side contains vertex 0.
///
/// Subsets are walked in Gray-code order so every step changes `|∂S|` and
/// `vol(S)` by one vertex's contribution. A disconnected graph gives `h = 0`
/// witnessed by its first component.
pub fn cheeger_brute(g: &Graph) -> Result<CheegerResult> {
    let n = g.n();
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge { n, max: MAX_BRUTE_N });
    }
    if n < 2 {
        return Err(Error::InvalidParameter("a cut needs at least two vertices".into()));
    }
    let comps = g.connected_components(None);
    if comps.len() > 1 {
        let side = comps[0].clone();
        return Ok(CheegerResult { h: Ratio::ZERO, cuts: vec![Cut { side, ratio: Ratio::ZERO }] });
    }

    let adj: Vec<u32> = (0..n).map(|i| g.neighbors(i).iter().fold(0u32, |m, &j| m | 1 << j)).collect();
    let deg: Vec<u64> = g.degrees().iter().map(|&d| d as u64).collect();
    let total = g.total_volume() as u64;
    // free vertices 1..n are bits 0..n−1 of the walk index
    let free = n - 1;
    let low = free.min(CHUNK_BITS);
    let high = free - low;

    let per_chunk: Vec<(u64, u64, Vec<u32>)> = (0..1u64 << high)
        .into_par_iter()
        .map(|chunk| {
            let mut set: u32 = 1 | ((chunk as u32) << (low + 1));
            let mut bnd: u64 = 0;
            let mut vol: u64 = 0;
            for i in 0..n {
                if set >> i & 1 == 1 {
                    vol += deg[i];
                    bnd += (adj[i] & !set).count_ones() as u64;
                }
            }
            let (mut bn, mut bd) = (u64::MAX, 1u64);
            let mut best: Vec<u32> = Vec::new();
            let mut consider = |set: u32, bnd: u64, vol: u64| {
                let den = vol.min(total - vol);
                if den == 0 {
                    return;
                }
                // bnd/den vs bn/bd
                let (lhs, rhs) = (bnd as u128 * bd as u128, bn as u128 * den as u128);
                if bn == u64::MAX || lhs < rhs {
                    (bn, bd) = (bnd, den);
                    best.clear();
                    best.push(set);
                } else if lhs == rhs {
                    best.push(set);
                }
            };
            consider(set, bnd, vol);
            for step in 1u64..1 << low {
                let bit = step.trailing_zeros() as usize;
                let v = bit + 1;
                let inside = (adj[v] & set).count_ones() as u64;
                if set >> v & 1 == 1 {
                    set &= !(1 << v);
                    vol -= deg[v];
                    bnd = bnd + 2 * inside - deg[v];
                } else {
                    set |= 1 << v;
                    vol += deg[v];
                    bnd = bnd + deg[v] - 2 * inside;
                }
                consider(set, bnd, vol);
            }
            (bn, bd, best)
        })
        .collect();

    let mut h: Option<Ratio> = None;
    let mut sides: Vec<u32> = Vec::new();
    for (bn, bd, best) in per_chunk {
        if bn == u64::MAX {
            continue;
        }
        let r = Ratio::new(bn, bd);
        match h {
            Some(cur) if r > cur => {}
            Some(cur) if r == cur => sides.extend(best),
            _ => {
                h = Some(r);
                sides = best;
            }
        }
    }
    let h = h.ok_or_else(|| Error::Internal("no proper cut found".into()))?;
    sides.sort_unstable();
    let cuts = sides.into_iter().map(|s| Cut { side: VertexSet::from_mask(n, s as u64), ratio: h }).collect();
    Ok(CheegerResult { h, cuts })
}
