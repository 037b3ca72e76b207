//! Small deterministic graph generators for tests and synthetic benchmarks.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("indices in range")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("indices in range")
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("indices in range")
}

/// Hub `0` joined to `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("indices in range")
}

/// `G(n, p)`: every pair linked independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("indices in range")
}

/// Preferential attachment: a clique on `links + 1` nodes, then every new
/// node links to `links` distinct existing nodes chosen proportionally to
/// degree. Average degree approaches `2 * links`.
pub fn barabasi_albert(n: usize, links: usize, seed: u64) -> Graph {
    assert!(links >= 1 && n > links, "need n > links >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * links);
    // Every edge endpoint once: a uniform pick is a degree-proportional pick.
    let mut endpoints = Vec::with_capacity(2 * n * links);
    for u in 0..=links {
        for v in u + 1..=links {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(links);
    for new in links + 1..n {
        chosen.clear();
        while chosen.len() < links {
            let &t = endpoints.choose(&mut rng).expect("seed clique is non-empty");
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Graph::from_edges(n, edges).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(10).edge_count(), 10);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(star(4).degree(0), 4);
    }

    #[test]
    fn barabasi_albert_mean_degree() {
        let g = barabasi_albert(2000, 4, 1);
        assert_eq!(g.edge_count(), 10 + 4 * (2000 - 5));
        let k = 2.0 * g.edge_count() as f64 / 2000.0;
        assert!((k - 8.0).abs() < 0.05, "{k}");
        assert!((0..2000).all(|u| g.degree(u) >= 4));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(barabasi_albert(300, 3, 9), barabasi_albert(300, 3, 9));
        assert_eq!(gnp(50, 0.1, 3), gnp(50, 0.1, 3));
    }
}
