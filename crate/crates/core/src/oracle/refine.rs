use super::{cut_ratio, Cut};
use crate::graph::{Graph, VertexSet};

/// Replaces a cut by one whose two sides are both connected, without
/// increasing the ratio.
///
/// First the smaller side is shrunk to its best connected component; then, if
/// the complement falls apart, the cut is re-centred on its best component.
/// Each replacement is justified by a mediant argument, so the ratio is kept
/// for optimal inputs and never increases otherwise. On a disconnected graph
/// the input is returned when no connected pair exists.
pub fn refine_connected(g: &Graph, cut: &Cut) -> Cut {
    let mut best = cut.clone();
    let mut side = cut.smaller_side(g);

    let comps = g.connected_components(Some(&side));
    if comps.len() > 1 {
        side = pick_best(g, comps).unwrap_or(side);
    }
    let rest = side.complement();
    let comps = g.connected_components(Some(&rest));
    if comps.len() > 1 {
        if let Some(b) = pick_best(g, comps) {
            side = b;
        }
    }
    if let Ok(ratio) = cut_ratio(g, &side) {
        if ratio <= best.ratio {
            best = Cut { side, ratio };
        }
    }
    best
}

/// Component with the smallest cut ratio (first on ties).
fn pick_best(g: &Graph, comps: Vec<VertexSet>) -> Option<VertexSet> {
    comps
        .into_iter()
        .filter_map(|c| cut_ratio(g, &c).ok().map(|r| (r, c)))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::oracle::cheeger_brute;

    fn connected(g: &Graph, s: &VertexSet) -> bool {
        g.connected_components(Some(s)).len() == 1
    }

    #[test]
    fn connected_cut_is_unchanged() {
        let g = Family::Path(6).build().unwrap();
        let c = Cut::new(&g, VertexSet::from_indices(6, [0, 1, 2])).unwrap();
        let r = refine_connected(&g, &c);
        assert_eq!(r.ratio, c.ratio);
        assert!(r.side == c.side || r.side == c.side.complement());
    }

    #[test]
    fn disconnected_side_is_split() {
        // both ends of a path as one side
        let g = Family::Path(9).build().unwrap();
        let c = Cut::new(&g, VertexSet::from_indices(9, [0, 1, 7, 8])).unwrap();
        let r = refine_connected(&g, &c);
        assert!(r.ratio <= c.ratio);
        assert!(connected(&g, &r.side) && connected(&g, &r.side.complement()));
    }

    #[test]
    fn optimal_cuts_keep_their_ratio() {
        for fam in [Family::Petersen, Family::Roach(3), Family::Complete(6), Family::Path(8)] {
            let g = fam.build().unwrap();
            let res = cheeger_brute(&g).unwrap();
            for c in &res.cuts {
                let r = refine_connected(&g, c);
                assert_eq!(r.ratio, res.h);
                assert!(connected(&g, &r.side) && connected(&g, &r.side.complement()), "{fam}");
            }
        }
    }

    #[test]
    fn never_increases_on_arbitrary_cuts() {
        let g = Family::Roach(3).build().unwrap();
        for mask in (1u64..(1 << 12) - 1).step_by(37) {
            let c = Cut::new(&g, VertexSet::from_mask(12, mask)).unwrap();
            let r = refine_connected(&g, &c);
            assert!(r.ratio <= c.ratio);
            assert!(connected(&g, &r.side) && connected(&g, &r.side.complement()));
        }
    }
}
