//! Graph-core operations checked against brute-force oracles.

use std::collections::BTreeSet;

use netsampler_core::generate;
use netsampler_core::graph::{induced_subgraph, parse_edge_list, Graph, IngestOptions};
use netsampler_core::properties::{average_degree, clustering_distribution, degree_distribution, density};
use proptest::prelude::*;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every pair of `nodes` checked against the parent's edge set.
fn brute_force_induced(g: &Graph, nodes: &[usize]) -> BTreeSet<(usize, usize)> {
    let edges: BTreeSet<_> = g.edges().iter().copied().collect();
    let mut out = BTreeSet::new();
    for &a in nodes {
        for &b in nodes {
            if a < b && edges.contains(&(a, b)) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Local clustering by looping over every neighbor pair and testing adjacency.
fn brute_force_clustering(g: &Graph) -> Vec<f64> {
    let edges: BTreeSet<_> = g.edges().iter().copied().collect();
    let linked = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut values: Vec<f64> = (0..g.node_count())
        .map(|u| {
            let nb: Vec<usize> = (0..g.node_count()).filter(|&v| linked(u, v)).collect();
            let d = nb.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0;
            for x in 0..d {
                for y in x + 1..d {
                    if linked(nb[x], nb[y]) {
                        links += 1;
                    }
                }
            }
            links as f64 / (d * (d - 1) / 2) as f64
        })
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.0..0.5f64, any::<u64>()).prop_map(|(n, p, seed)| generate::gnp(n, p, seed))
}

#[test]
fn induced_subgraph_matches_pair_enumeration_on_random_20_node_graph() {
    let g = generate::gnp(20, 0.3, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let nodes = index::sample(&mut rng, 20, 8).into_vec();
    let s = induced_subgraph(&g, &nodes).unwrap();
    let got: BTreeSet<_> = s.edges().iter().copied().collect();
    assert_eq!(got, brute_force_induced(&g, &nodes));
}

#[test]
fn clustering_matches_triple_loop_on_random_30_node_graph() {
    let g = generate::gnp(30, 0.25, 3);
    let got = clustering_distribution(&g);
    let want = brute_force_clustering(&g);
    assert_eq!(got.len(), 30);
    for (a, b) in got.values().iter().zip(&want) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn table_style_scalars() {
    let k5 = generate::complete(5);
    assert_eq!(density(&k5).unwrap(), 1.0);
    assert_eq!(average_degree(&k5), 4.0);
    let edgeless = Graph::from_edges(10, []).unwrap();
    assert_eq!(average_degree(&edgeless), 0.0);
    assert_eq!(density(&edgeless).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_equals_brute_force(g in arb_graph(200), seed in any::<u64>(), share in 0.05..1.0f64) {
        let n = g.node_count();
        let k = ((share * n as f64) as usize).clamp(1, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = index::sample(&mut rng, n, k).into_vec();
        let s = induced_subgraph(&g, &nodes).unwrap();
        let got: BTreeSet<_> = s.edges().iter().copied().collect();
        prop_assert_eq!(got, brute_force_induced(&g, &nodes));
        prop_assert_eq!(s.node_count(), k);
        let degree_sum: f64 = degree_distribution(&s).values().iter().sum();
        prop_assert_eq!(degree_sum, 2.0 * s.edge_count() as f64);
    }

    #[test]
    fn clustering_is_bounded_and_matches_oracle(g in arb_graph(40)) {
        let got = clustering_distribution(&g);
        prop_assert_eq!(got.len(), g.node_count());
        prop_assert!(got.values().iter().all(|&c| (0.0..=1.0).contains(&c)));
        let want = brute_force_clustering(&g);
        for (a, b) in got.values().iter().zip(&want) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn induction_maximizes_density_for_a_node_set(g in arb_graph(60), seed in any::<u64>(), keep in 0.0..1.0f64) {
        let n = g.node_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nodes = index::sample(&mut rng, n, n.clamp(2, 12)).into_vec();
        let induced = induced_subgraph(&g, &nodes).unwrap();
        let full = induced.to_graph();
        // Any edge subset over the same node set.
        let subset: Vec<(usize, usize)> = full
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as f64 / full.edge_count().max(1) as f64) < keep)
            .map(|(_, &e)| e)
            .collect();
        let partial = Graph::from_edges(full.node_count(), subset).unwrap();
        prop_assert!(density(&full).unwrap() >= density(&partial).unwrap());
    }

    #[test]
    fn edge_list_round_trip_preserves_structure(g in arb_graph(80)) {
        // Only nodes that appear in some edge survive a text round trip.
        prop_assume!((0..g.node_count()).all(|u| g.degree(u) > 0));
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = parse_edge_list(buf.as_slice(), &IngestOptions::default()).unwrap();
        prop_assert_eq!(h.node_count(), g.node_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(degree_distribution(&h), degree_distribution(&g));
    }
}
