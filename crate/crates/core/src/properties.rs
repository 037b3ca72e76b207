//! Network properties: degree and local clustering distributions, average
//! degree and density.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Network};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    Degree,
    Clustering,
}

impl DistributionKind {
    pub fn name(self) -> &'static str {
        match self {
            DistributionKind::Degree => "degree",
            DistributionKind::Clustering => "clustering",
        }
    }
}

/// Per-node values of one property, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyDistribution {
    kind: DistributionKind,
    values: Vec<f64>,
}

impl PropertyDistribution {
    /// Sorts `values`. NaNs are rejected by panicking since no property
    /// produces them.
    pub fn new(kind: DistributionKind, mut values: Vec<f64>) -> Self {
        assert!(values.iter().all(|v| !v.is_nan()), "NaN in property distribution");
        values.sort_by(f64::total_cmp);
        Self { kind, values }
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            return f64::NAN;
        }
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Empirical CDF: share of values `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        let below = self.values.partition_point(|&v| v <= x);
        below as f64 / self.values.len() as f64
    }

    /// Concatenates distributions of the same kind.
    pub fn pooled<'a, I>(parts: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a PropertyDistribution>,
    {
        let mut iter = parts.into_iter();
        let first = iter.next()?;
        let mut values = first.values.clone();
        for part in iter {
            if part.kind != first.kind {
                return None;
            }
            values.extend_from_slice(&part.values);
        }
        Some(Self::new(first.kind, values))
    }
}

pub fn degree_distribution<N: Network + ?Sized>(network: &N) -> PropertyDistribution {
    let g = network.as_graph();
    let values = (0..g.node_count()).map(|u| g.degree(u) as f64).collect();
    PropertyDistribution::new(DistributionKind::Degree, values)
}

/// Number of links among the neighbors of `u`, via sorted-list intersection.
fn neighbor_links(g: &Graph, u: usize) -> usize {
    let nb = g.neighbors(u);
    let mut links = 0;
    for (i, &v) in nb.iter().enumerate() {
        // Count each neighbor pair (v, w) once with w after v in `nb`.
        let rest = &nb[i + 1..];
        let vn = g.neighbors(v);
        let (mut a, mut b) = (0, 0);
        while a < rest.len() && b < vn.len() {
            match rest[a].cmp(&vn[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    links += 1;
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    links
}

/// Local clustering coefficient of one node; 0 when its degree is below 2.
pub fn local_clustering(g: &Graph, u: usize) -> f64 {
    let d = g.degree(u);
    if d < 2 {
        return 0.0;
    }
    let pairs = d * (d - 1) / 2;
    neighbor_links(g, u) as f64 / pairs as f64
}

pub fn clustering_distribution<N: Network + ?Sized>(network: &N) -> PropertyDistribution {
    let g = network.as_graph();
    let values = (0..g.node_count()).map(|u| local_clustering(&g, u)).collect();
    PropertyDistribution::new(DistributionKind::Clustering, values)
}

/// Mean local clustering coefficient over all nodes.
pub fn average_clustering<N: Network + ?Sized>(network: &N) -> f64 {
    clustering_distribution(network).mean()
}

/// `2m / n`; `NaN` for a graph without nodes.
pub fn average_degree<N: Network + ?Sized>(network: &N) -> f64 {
    let g = network.as_graph();
    2.0 * g.edge_count() as f64 / g.node_count() as f64
}

/// `2m / (n (n - 1))`.
pub fn density<N: Network + ?Sized>(network: &N) -> Result<f64> {
    let g = network.as_graph();
    density_of(g.node_count(), g.edge_count())
}

pub(crate) fn density_of(n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::DensityUndefined(n));
    }
    Ok(2.0 * m as f64 / (n as f64 * (n - 1) as f64))
}

/// Headline counts and averages of a network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub nodes: usize,
    pub links: usize,
    pub average_degree: f64,
    pub clustering: f64,
    pub density: f64,
}

pub fn summarize<N: Network + ?Sized>(network: &N) -> Result<NetworkSummary> {
    let g = network.as_graph();
    let g: &Graph = &g;
    Ok(NetworkSummary {
        nodes: g.node_count(),
        links: g.edge_count(),
        average_degree: average_degree(g),
        clustering: average_clustering(g),
        density: density(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induced_subgraph;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn triangle_and_star_distributions() {
        let tri = complete(3);
        assert_eq!(degree_distribution(&tri).values(), &[2.0, 2.0, 2.0]);
        assert_eq!(clustering_distribution(&tri).values(), &[1.0, 1.0, 1.0]);

        let s = star(4);
        assert_eq!(degree_distribution(&s).values(), &[1.0, 1.0, 1.0, 1.0, 4.0]);
        assert_eq!(clustering_distribution(&s).values(), &[0.0; 5]);
    }

    #[test]
    fn scalar_properties() {
        assert_eq!(density(&complete(5)).unwrap(), 1.0);
        let empty = Graph::from_edges(10, []).unwrap();
        assert_eq!(average_degree(&empty), 0.0);
        assert_eq!(density(&empty).unwrap(), 0.0);
        let single = Graph::from_edges(1, []).unwrap();
        assert!(matches!(density(&single), Err(Error::DensityUndefined(1))));
    }

    #[test]
    fn cdf_is_right_continuous_step() {
        let d = PropertyDistribution::new(DistributionKind::Degree, vec![3.0, 1.0, 2.0, 2.0]);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.cdf(1.0), 0.25);
        assert_eq!(d.cdf(2.0), 0.75);
        assert_eq!(d.cdf(2.5), 0.75);
        assert_eq!(d.cdf(3.0), 1.0);
    }

    #[test]
    fn sample_degrees_sum_to_twice_edges() {
        let g = complete(6);
        let s = induced_subgraph(&g, &[0, 2, 5]).unwrap();
        let deg = degree_distribution(&s);
        assert_eq!(deg.len(), 3);
        assert_eq!(deg.values().iter().sum::<f64>(), 2.0 * s.edge_count() as f64);
    }

    #[test]
    fn pooled_concatenates() {
        let a = PropertyDistribution::new(DistributionKind::Degree, vec![1.0, 3.0]);
        let b = PropertyDistribution::new(DistributionKind::Degree, vec![2.0]);
        let p = PropertyDistribution::pooled([&a, &b]).unwrap();
        assert_eq!(p.values(), &[1.0, 2.0, 3.0]);
        let c = PropertyDistribution::new(DistributionKind::Clustering, vec![0.0]);
        assert!(PropertyDistribution::pooled([&a, &c]).is_none());
    }
}
