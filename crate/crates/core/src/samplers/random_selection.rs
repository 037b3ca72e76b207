use rand::seq::index;
use rand::Rng;

use super::{checked_target, finish, SamplerRng, SamplerSpec, Selection, Technique};
use crate::error::Result;
use crate::graph::{Graph, Sample};

/// Random node selection: `target` distinct nodes uniformly, induced.
pub fn rns<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let target = checked_target(g, spec)?;
    let mut rng = spec.rng();
    let nodes = index::sample(&mut rng, g.node_count(), target).into_vec();
    Ok(finish(
        g,
        spec,
        Technique::Rns,
        Selection {
            nodes,
            edges: Vec::new(),
            uniform_fallback: false,
        },
    ))
}

/// Fenwick tree over integer weights supporting weighted draws and removal.
struct WeightTree {
    tree: Vec<u64>,
    total: u64,
}

impl WeightTree {
    fn new(weights: impl ExactSizeIterator<Item = u64>) -> Self {
        let n = weights.len();
        let mut tree = vec![0u64; n + 1];
        let mut total = 0;
        for (i, w) in weights.enumerate() {
            tree[i + 1] = w;
            total += w;
        }
        for j in 1..=n {
            let parent = j + (j & j.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[j];
            }
        }
        Self { tree, total }
    }

    fn remove(&mut self, index: usize, weight: u64) {
        self.total -= weight;
        let mut j = index + 1;
        while j < self.tree.len() {
            self.tree[j] -= weight;
            j += j & j.wrapping_neg();
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `r`.
    fn find(&self, mut r: u64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        if step > n {
            step >>= 1;
        }
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= r {
                pos = next;
                r -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Uniform draw among nodes not yet in `taken`, by rejection.
pub(super) fn uniform_unselected(rng: &mut SamplerRng, taken: &[bool]) -> usize {
    loop {
        let u = rng.random_range(0..taken.len());
        if !taken[u] {
            return u;
        }
    }
}

/// Random node selection by degree: sequential draws without replacement with
/// probability proportional to the original degree.
pub fn rnd<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let target = checked_target(g, spec)?;
    let mut rng = spec.rng();
    let n = g.node_count();
    let mut weights = WeightTree::new((0..n).map(|u| g.degree(u) as u64));
    let mut taken = vec![false; n];
    let mut nodes = Vec::with_capacity(target);
    let mut uniform_fallback = false;
    while nodes.len() < target {
        let u = if weights.total > 0 {
            let u = weights.find(rng.random_range(0..weights.total));
            weights.remove(u, g.degree(u) as u64);
            u
        } else {
            // Only zero-degree nodes remain.
            uniform_fallback = true;
            uniform_unselected(&mut rng, &taken)
        };
        debug_assert!(!taken[u]);
        taken[u] = true;
        nodes.push(u);
    }
    Ok(finish(
        g,
        spec,
        Technique::Rnd,
        Selection {
            nodes,
            edges: Vec::new(),
            uniform_fallback,
        },
    ))
}

/// Draws links uniformly without replacement until their endpoints reach the
/// node target. Isolated nodes fill the remainder if links run out.
fn select_links(g: &Graph, spec: &SamplerSpec) -> Result<Selection> {
    let target = checked_target(g, spec)?;
    let mut rng = spec.rng();
    let links = g.edges();
    let mut order: Vec<usize> = (0..links.len()).collect();
    let mut taken = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(target + 1);
    let mut edges = Vec::new();
    let mut drawn = 0;
    while nodes.len() < target && drawn < order.len() {
        // Lazy Fisher-Yates: position `drawn` receives a uniform pick from the rest.
        let pick = rng.random_range(drawn..order.len());
        order.swap(drawn, pick);
        let (u, v) = links[order[drawn]];
        drawn += 1;
        edges.push((u, v));
        for x in [u, v] {
            if !taken[x] {
                taken[x] = true;
                nodes.push(x);
            }
        }
    }
    let mut uniform_fallback = false;
    while nodes.len() < target {
        uniform_fallback = true;
        let u = uniform_unselected(&mut rng, &taken);
        taken[u] = true;
        nodes.push(u);
    }
    Ok(Selection {
        nodes,
        edges,
        uniform_fallback,
    })
}

/// Random link selection.
pub fn rls<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = select_links(g, spec)?;
    Ok(finish(g, spec, Technique::Rls, selection))
}

/// Random link selection with induction over the link endpoints.
pub fn rli<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = select_links(g, spec)?;
    Ok(finish(g, spec, Technique::Rli, selection))
}
