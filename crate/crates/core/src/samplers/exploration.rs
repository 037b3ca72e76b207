use std::collections::{HashSet, VecDeque};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_distr::{Distribution, Geometric};

use super::random_selection::uniform_unselected;
use super::{checked_target, finish, SamplerSpec, Selection, Technique};
use crate::error::{Error, Result};
use crate::graph::{Graph, Sample};

/// Number of neighbors a burning node ignites: geometric on `{0, 1, 2, ...}`
/// with success probability `1 - p`, so the mean is `p / (1 - p)`.
#[derive(Debug, Clone, Copy)]
pub struct BurnDistribution {
    inner: Geometric,
}

impl BurnDistribution {
    pub fn new(forward_burning_p: f64) -> Result<Self> {
        if !(forward_burning_p > 0.0 && forward_burning_p < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "forward burning probability {forward_burning_p} not in (0, 1)"
            )));
        }
        let inner = Geometric::new(1.0 - forward_burning_p).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Ok(Self { inner })
    }

    pub fn mean(forward_burning_p: f64) -> f64 {
        forward_burning_p / (1.0 - forward_burning_p)
    }
}

impl Distribution<u64> for BurnDistribution {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.inner.sample(rng)
    }
}

/// Random walk with fly-back to the current start node. Restarts from a
/// fresh uniform node after `stall_factor * |V'|` steps without growth.
fn walk(g: &Graph, spec: &SamplerSpec) -> Result<Selection> {
    let target = checked_target(g, spec)?;
    let mut rng = spec.rng();
    let mut visited = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(target);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();

    let mut start = rng.random_range(0..g.node_count());
    visited[start] = true;
    nodes.push(start);
    let mut current = start;
    let mut stalled = 0usize;

    while nodes.len() < target {
        if g.degree(start) == 0 || stalled >= spec.stall_factor * nodes.len() {
            start = uniform_unselected(&mut rng, &visited);
            visited[start] = true;
            nodes.push(start);
            current = start;
            stalled = 0;
            continue;
        }
        if spec.flyback > 0.0 && rng.random::<f64>() < spec.flyback {
            current = start;
            stalled += 1;
            continue;
        }
        let next = *g
            .neighbors(current)
            .choose(&mut rng)
            .expect("walk only moves along the start node's component");
        edges.insert((current.min(next), current.max(next)));
        current = next;
        if visited[next] {
            stalled += 1;
        } else {
            visited[next] = true;
            nodes.push(next);
            stalled = 0;
        }
    }

    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(Selection {
        nodes,
        edges,
        uniform_fallback: false,
    })
}

/// Forest-fire burning: partial breadth-first search where each burning node
/// ignites a geometric number of its unburned neighbors. Burned nodes are
/// never re-burned; an extinguished fire restarts at a fresh unburned node.
fn burn(g: &Graph, spec: &SamplerSpec) -> Result<Selection> {
    let target = checked_target(g, spec)?;
    let spread = BurnDistribution::new(spec.forward_burning_p)?;
    let mut rng = spec.rng();
    let mut burned = vec![false; g.node_count()];
    let mut nodes = Vec::with_capacity(target);
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    let mut candidates = Vec::new();

    while nodes.len() < target {
        let Some(u) = queue.pop_front() else {
            let seed = uniform_unselected(&mut rng, &burned);
            burned[seed] = true;
            nodes.push(seed);
            queue.push_back(seed);
            continue;
        };
        let k = spread.sample(&mut rng);
        candidates.clear();
        candidates.extend(g.neighbors(u).iter().copied().filter(|&v| !burned[v]));
        let take = candidates.len().min(usize::try_from(k).unwrap_or(usize::MAX));
        let (ignited, _) = candidates.partial_shuffle(&mut rng, take);
        for &v in ignited.iter() {
            if nodes.len() >= target {
                break;
            }
            burned[v] = true;
            nodes.push(v);
            edges.push((u, v));
            queue.push_back(v);
        }
    }

    Ok(Selection {
        nodes,
        edges,
        uniform_fallback: false,
    })
}

/// Random walk sampling.
pub fn rws<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = walk(g, spec)?;
    Ok(finish(g, spec, Technique::Rws, selection))
}

/// Random walk sampling with induction over visited nodes.
pub fn rwi<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = walk(g, spec)?;
    Ok(finish(g, spec, Technique::Rwi, selection))
}

/// Forest-fire sampling.
pub fn ffs<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = burn(g, spec)?;
    Ok(finish(g, spec, Technique::Ffs, selection))
}

/// Forest-fire sampling with induction over burned nodes.
pub fn ffi<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    let selection = burn(g, spec)?;
    Ok(finish(g, spec, Technique::Ffi, selection))
}
