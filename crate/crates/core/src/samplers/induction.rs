use crate::graph::{mutual_edges, node_mask, Graph};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform variate in `[0, 1)` determined by an undirected link and a seed.
pub fn edge_uniform(seed: u64, u: usize, v: usize) -> f64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let h = splitmix64(seed ^ splitmix64((a as u64) ^ splitmix64(b as u64).rotate_left(17)));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Adds to `selected` every mutual link of `nodes` whose keyed variate is
/// below `alpha`. Links already selected are always kept.
pub(super) fn induce(
    g: &Graph,
    nodes: &[usize],
    mut selected: Vec<(usize, usize)>,
    alpha: f64,
    seed: u64,
) -> Vec<(usize, usize)> {
    let mask = node_mask(g, nodes);
    for e in selected.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    selected.sort_unstable();
    selected.dedup();
    let mut out = selected.clone();
    for (u, v) in mutual_edges(g, nodes, &mask) {
        if selected.binary_search(&(u, v)).is_err() && (alpha >= 1.0 || edge_uniform(seed, u, v) < alpha) {
            out.push((u, v));
        }
    }
    out
}
