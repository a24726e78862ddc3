use proptest::prelude::*;

use cheeger::bench::{bench, emit_csv, parse_csv, BenchConfig};
use cheeger::methods::InitScheme;
use cheeger::oracle::{cheeger_brute, refine_connected};
use cheeger::{Cut, Graph, Method, MethodOptions, VertexSet};

/// Connected graph: a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (3usize..=8).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let pairs = n * (n - 1) / 2;
        (Just(n), parents, proptest::collection::vec(any::<bool>(), pairs))
    })
    .prop_map(|(n, parents, extra)| {
        let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if extra[k] && !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::new(n, edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn methods_never_beat_the_exact_constant(g in connected_graph(), seed in any::<u64>()) {
        let h = cheeger_brute(&g).unwrap().h;
        let opts = MethodOptions::default();
        for scheme in [InitScheme::Subset, InitScheme::Vector] {
            for m in Method::ALL {
                let t = cheeger::bench::run_single(&g, m, scheme, seed, 0, &opts).unwrap();
                prop_assert!(t.h() >= h, "{m} gave {} below h = {h}", t.h());
                prop_assert_eq!(Cut::new(&g, t.cut.side.clone()).unwrap().ratio, t.h());
                let lambdas = t.lambdas();
                for w in lambdas.windows(2) {
                    prop_assert!(w[1] <= w[0] + 1e-9, "{m} increased: {lambdas:?}");
                }
            }
        }
    }

    #[test]
    fn edge_lists_round_trip(g in connected_graph()) {
        let back = Graph::read_edge_list(&g.write_edge_list()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn refinement_never_worsens(g in connected_graph(), mask in any::<u64>()) {
        let n = g.n();
        let side = VertexSet::from_mask(n, mask & ((1 << n) - 1));
        prop_assume!(!side.is_empty() && side.len() < n);
        let cut = Cut::new(&g, side).unwrap();
        let refined = refine_connected(&g, &cut);
        prop_assert!(refined.ratio <= cut.ratio);
        prop_assert!(g.connected_components(Some(&refined.side)).len() == 1);
        prop_assert!(g.connected_components(Some(&refined.side.complement())).len() == 1);
    }
}

#[test]
fn bench_csv_round_trips() {
    let g = cheeger::Family::Roach(3).build().unwrap();
    let mut cfg = BenchConfig::new("roach12", Method::ALL.to_vec(), 25, 11);
    cfg.init = InitScheme::Vector;
    let out = bench(&g, &cfg).unwrap();
    let csv = emit_csv(&out.records);
    assert_eq!(parse_csv(&csv).unwrap(), out.records);
    assert_eq!(emit_csv(&parse_csv(&csv).unwrap()), csv);
}
