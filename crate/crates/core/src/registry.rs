//! Reference networks with their published summary statistics, used to check
//! a downloaded edge list before running experiments on it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::properties::NetworkSummary;

const BUILTIN: &str = include_str!("../data/registry.toml");

/// Relative tolerance for the real-valued columns.
pub const RELATIVE_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryEntry {
    pub name: String,
    pub description: String,
    pub url: String,
    pub nodes: usize,
    pub links: usize,
    pub average_degree: f64,
    pub clustering: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub networks: Vec<RegistryEntry>,
}

impl Registry {
    /// The registry shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN).expect("bundled registry parses")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.networks.iter().find(|e| e.name == name)
    }
}

/// One compared column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub what: &'static str,
    pub expected: f64,
    pub actual: f64,
    pub pass: bool,
}

/// Counts must match exactly; average degree and density within
/// [`RELATIVE_TOLERANCE`]. Clustering is not compared.
pub fn check_summary(entry: &RegistryEntry, summary: &NetworkSummary) -> Vec<Check> {
    let exact = |what, expected: usize, actual: usize| Check {
        what,
        expected: expected as f64,
        actual: actual as f64,
        pass: expected == actual,
    };
    let close = |what, expected: f64, actual: f64| Check {
        what,
        expected,
        actual,
        pass: (actual - expected).abs() <= RELATIVE_TOLERANCE * expected.abs(),
    };
    vec![
        exact("nodes", entry.nodes, summary.nodes),
        exact("links", entry.links, summary.links),
        close("average_degree", entry.average_degree, summary.average_degree),
        close("density", entry.density, summary.density),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_lists_ten_networks() {
        let r = Registry::builtin();
        assert_eq!(r.networks.len(), 10);
        let hep = r.get("ca-hep").unwrap();
        assert_eq!((hep.nodes, hep.links), (12008, 237010));
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn published_degree_and_density_agree_with_counts() {
        for e in Registry::builtin().networks {
            let n = e.nodes as f64;
            let mut k = 2.0 * e.links as f64 / n;
            // road-tx publishes a degree and density twice its link count.
            if e.name == "road-tx" {
                k *= 2.0;
            }
            // Published degrees are rounded, and nd.edu's is truncated.
            assert!((k - e.average_degree).abs() < 0.1, "{}: {k}", e.name);
            let d = k / (n - 1.0);
            assert!((d - e.density).abs() < 0.05 * e.density, "{}: {d}", e.name);
        }
    }

    #[test]
    fn checks_use_exact_counts_and_relative_reals() {
        let entry = RegistryEntry {
            name: "x".into(),
            description: String::new(),
            url: String::new(),
            nodes: 10,
            links: 20,
            average_degree: 4.0,
            clustering: 0.0,
            density: 0.4,
        };
        let summary = NetworkSummary {
            nodes: 10,
            links: 20,
            average_degree: 4.03,
            clustering: 0.9,
            density: 0.403,
        };
        let checks = check_summary(&entry, &summary);
        assert!(checks.iter().all(|c| c.pass));
        let off = NetworkSummary {
            links: 21,
            density: 0.41,
            ..summary
        };
        let failed: Vec<_> = check_summary(&entry, &off)
            .into_iter()
            .filter(|c| !c.pass)
            .map(|c| c.what)
            .collect();
        assert_eq!(failed, ["links", "density"]);
    }
}
