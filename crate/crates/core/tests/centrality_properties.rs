mod common;

use citenv::centrality::{
    betweenness_centrality, brute_force_betweenness, closeness_all, degree_centrality, eigenvector_centrality,
    geodesic_ledger, raw_betweenness, Directedness, Graph,
};
use common::{graph_from_mask, permuted};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8, any::<bool>(), prop::collection::vec(any::<bool>(), 56))
        .prop_map(|(n, directed, mask)| graph_from_mask(n, directed, &mask))
}

fn with_permutation() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    small_graph().prop_flat_map(|g| {
        let n = g.len();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn scaled(g: &Graph, factor: f64) -> Graph {
    let mut out = Graph::with_nodes(g.directedness(), g.labels()).unwrap();
    for (i, j, w) in g.edges() {
        out.add_edge_at(i, j, w * factor).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn brandes_matches_enumeration(g in small_graph()) {
        let fast = betweenness_centrality(&g);
        let oracle = brute_force_betweenness(&g).unwrap();
        for (a, b) in fast.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-9, "{:?} vs {:?}", fast, oracle);
        }
    }

    #[test]
    fn undirected_raw_betweenness_counts_interior_positions(g in small_graph()) {
        let g = if g.is_directed() { g.symmetrized() } else { g };
        let total: f64 = raw_betweenness(&g).iter().sum();
        let ledger = geodesic_ledger(&g).unwrap();
        // every geodesic of a pair has distance - 1 interior nodes
        let interior: usize = ledger.iter().filter_map(|p| p.distance).map(|d| d - 1).sum();
        let fractional: f64 = ledger
            .iter()
            .filter(|p| p.paths > 0)
            .map(|p| p.through.iter().sum::<u64>() as f64 / p.paths as f64)
            .sum();
        prop_assert!((total - interior as f64).abs() < 1e-9);
        prop_assert!((fractional - interior as f64).abs() < 1e-9);
    }

    #[test]
    fn relabeling_preserves_closeness_and_betweenness((g, perm) in with_permutation()) {
        let h = permuted(&g, &perm);
        let (bg, bh) = (betweenness_centrality(&g), betweenness_centrality(&h));
        let (cg, ch) = (closeness_all(&g), closeness_all(&h));
        for i in 0..g.len() {
            prop_assert!((bg[i] - bh[perm[i]]).abs() < 1e-12);
            prop_assert!((cg[i] - ch[perm[i]]).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvector_satisfies_the_eigen_relation(g in small_graph()) {
        let g = g.symmetrized();
        prop_assume!(g.edge_count() > 0);
        let ev = eigenvector_centrality(&g).unwrap();
        let v = &ev.loadings;
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        prop_assert!(v.iter().all(|&x| x >= 0.0));
        let residual: f64 = (0..g.len())
            .map(|i| {
                let av: f64 = g.successors(i).map(|(j, w)| w * v[j]).sum();
                (av - ev.eigenvalue * v[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        prop_assert!(residual / norm <= 1e-8, "residual {}", residual);
    }

    #[test]
    fn weight_scaling_changes_nothing_but_weights(g in small_graph(), factor in 0.01f64..100.0) {
        let h = scaled(&g, factor);
        prop_assert_eq!(betweenness_centrality(&g), betweenness_centrality(&h));
        prop_assert_eq!(closeness_all(&g), closeness_all(&h));
        let sym = g.symmetrized();
        if sym.edge_count() > 0 {
            let a = eigenvector_centrality(&sym).unwrap();
            let b = eigenvector_centrality(&scaled(&sym, factor)).unwrap();
            for (x, y) in a.loadings.iter().zip(&b.loadings) {
                prop_assert!((x - y).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn adding_an_edge_is_monotone(g in small_graph(), a in 0usize..8, b in 0usize..8) {
        let n = g.len();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let mut h = g.clone();
        h.add_edge_at(a, b, 1.0).unwrap();
        let before = g.components();
        let after = h.components();
        for i in 0..n {
            let label = &g.labels()[i];
            let d0 = degree_centrality(&g, label).unwrap();
            let d1 = degree_centrality(&h, label).unwrap();
            prop_assert!(d1.in_degree >= d0.in_degree && d1.out_degree >= d0.out_degree);
            for j in 0..n {
                // nodes connected before stay connected
                if before[i] == before[j] {
                    prop_assert_eq!(after[i], after[j]);
                }
            }
        }
    }
}

#[test]
fn betweenness_is_bit_reproducible() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = common::random_graph(&mut rng, 150, 0.05, Directedness::Undirected);
    let first = betweenness_centrality(&g);
    for _ in 0..3 {
        let again = betweenness_centrality(&g);
        assert!(first.iter().zip(&again).all(|(a, b)| a.to_bits() == b.to_bits()));
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| betweenness_centrality(&g));
    assert!(first.iter().zip(&single).all(|(a, b)| a.to_bits() == b.to_bits()));
}
