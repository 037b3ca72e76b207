//! The comparison experiment: every technique sampled `runs` times on every
//! network, each realization measured against the original, aggregated, and
//! turned into residual tables.
//!
//! Work is parallel over (technique, run) pairs within a network; results are
//! collected in a fixed order so the bundle depends only on the config.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::config::{Aggregation, DatasetEntry, Property, RunConfig};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list, Graph, IngestOptions};
use crate::properties::{
    average_degree, clustering_distribution, degree_distribution, density, density_of, summarize, PropertyDistribution,
};
use crate::report::{DatasetFailure, NetworkRecord, ReportBundle, ReportRow, ResidualTable, SummaryRow, SweepRow};
use crate::samplers::{self, SamplerSpec, Technique};
use crate::stats::{
    ks_distance, studentized_residuals, studentized_residuals_true, t_critical, PropertyMatrix, ResidualMode,
    SIGNIFICANCE_LEVEL,
};

/// Seed of one realization. `technique` is `None` in paired designs, where
/// every technique reuses the same seed for a given network and run.
pub fn derive_seed(master_seed: u64, technique: Option<Technique>, network: &str, run: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(b"netsampler/realization");
    h.update(master_seed.to_le_bytes());
    h.update([technique.map_or(0xFF, Technique::ordinal)]);
    h.update((network.len() as u64).to_le_bytes());
    h.update(network.as_bytes());
    h.update((run as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// The original network's reference values.
struct Original {
    degrees: Option<PropertyDistribution>,
    clustering: Option<PropertyDistribution>,
    average_degree: f64,
    density: f64,
}

/// Measurements of one sampled realization.
struct Realization {
    /// Per-property statistic, in `properties` order.
    stats: Vec<f64>,
    nodes: usize,
    edges: usize,
    distributions: Vec<Option<PropertyDistribution>>,
    uniform_fallback: bool,
}

fn measure(
    graph: &Graph,
    original: &Original,
    properties: &[Property],
    spec: &SamplerSpec,
    keep_distributions: bool,
) -> Result<Realization> {
    let sample = samplers::sample(graph, spec)?;
    let h = sample.to_graph();
    let mut stats = Vec::with_capacity(properties.len());
    let mut distributions = Vec::with_capacity(properties.len());
    for &p in properties {
        let (stat, dist) = match p {
            Property::DegreeDist => {
                let d = degree_distribution(&h);
                let orig = original.degrees.as_ref().expect("computed when requested");
                (ks_distance(&d, orig)?, Some(d))
            }
            Property::ClusteringDist => {
                let d = clustering_distribution(&h);
                let orig = original.clustering.as_ref().expect("computed when requested");
                (ks_distance(&d, orig)?, Some(d))
            }
            Property::AvgDegree => (average_degree(&h), None),
            Property::Density => (density(&h)?, None),
        };
        stats.push(stat);
        distributions.push(if keep_distributions { dist } else { None });
    }
    Ok(Realization {
        stats,
        nodes: h.node_count(),
        edges: h.edge_count(),
        distributions,
        uniform_fallback: sample.uniform_fallback,
    })
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Statistic over all realizations pooled together.
fn pooled_value(property: Property, slot: usize, runs: &[Realization], original: &Original) -> Result<f64> {
    Ok(match property {
        Property::DegreeDist | Property::ClusteringDist => {
            let pooled = PropertyDistribution::pooled(
                runs.iter()
                    .map(|r| r.distributions[slot].as_ref().expect("kept for pooling")),
            )
            .ok_or(Error::EmptyDistribution)?;
            let orig = if property == Property::DegreeDist {
                original.degrees.as_ref()
            } else {
                original.clustering.as_ref()
            };
            ks_distance(&pooled, orig.expect("computed when requested"))?
        }
        Property::AvgDegree => {
            let links: usize = runs.iter().map(|r| r.edges).sum();
            let nodes: usize = runs.iter().map(|r| r.nodes).sum();
            2.0 * links as f64 / nodes as f64
        }
        Property::Density => {
            let links: f64 = runs.iter().map(|r| r.edges as f64).sum();
            let pairs: f64 = runs.iter().map(|r| r.nodes as f64 * (r.nodes as f64 - 1.0)).sum();
            2.0 * links / pairs
        }
    })
}

/// One (technique, property) cell before residuals are known.
struct Cell {
    technique: Technique,
    property: Property,
    per_run: Vec<f64>,
    value: f64,
    uniform_fallbacks: usize,
}

struct NetworkResult {
    record: NetworkRecord,
    original: Original,
    cells: Vec<Cell>,
    sweep: Vec<SweepRow>,
}

fn residual_mode(property: Property) -> ResidualMode {
    if property.is_distribution() {
        ResidualMode::PeerMean
    } else {
        ResidualMode::TrueValue
    }
}

fn realization_seed(config: &RunConfig, technique: Technique, network: &str, run: usize) -> u64 {
    let tag = (!config.paired).then_some(technique);
    derive_seed(config.master_seed, tag, network, run)
}

fn run_network(config: &RunConfig, name: &str, graph: &Graph) -> Result<NetworkResult> {
    let properties = &config.properties;
    let wants = |p: Property| properties.contains(&p);
    let original = Original {
        degrees: wants(Property::DegreeDist).then(|| degree_distribution(graph)),
        clustering: wants(Property::ClusteringDist).then(|| clustering_distribution(graph)),
        average_degree: average_degree(graph),
        density: density_of(graph.node_count(), graph.edge_count())?,
    };
    let summary = summarize(graph)?;
    let pooled = config.aggregation == Aggregation::Pooled;

    let units: Vec<(Technique, usize)> = config
        .techniques
        .iter()
        .flat_map(|&t| (0..config.runs).map(move |r| (t, r)))
        .collect();
    let realizations: Vec<Realization> = units
        .par_iter()
        .map(|&(t, run)| {
            let spec = config.sampler_spec(t, realization_seed(config, t, name, run));
            measure(graph, &original, properties, &spec, pooled)
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::new();
    for (ti, &technique) in config.techniques.iter().enumerate() {
        let runs = &realizations[ti * config.runs..(ti + 1) * config.runs];
        let uniform_fallbacks = runs.iter().filter(|r| r.uniform_fallback).count();
        for (slot, &property) in properties.iter().enumerate() {
            let per_run: Vec<f64> = runs.iter().map(|r| r.stats[slot]).collect();
            let value = if pooled {
                pooled_value(property, slot, runs, &original)?
            } else {
                mean_std(&per_run).0
            };
            cells.push(Cell {
                technique,
                property,
                per_run,
                value,
                uniform_fallbacks,
            });
        }
    }

    let sweep = if config.induction_sweep {
        run_sweep(config, name, graph, &original)?
    } else {
        Vec::new()
    };

    Ok(NetworkResult {
        record: NetworkRecord {
            name: name.to_owned(),
            summary,
        },
        original,
        cells,
        sweep,
    })
}

/// Partial-induction runs of the induced techniques, reusing the main
/// realization seeds so only the induction fraction varies.
fn run_sweep(config: &RunConfig, name: &str, graph: &Graph, original: &Original) -> Result<Vec<SweepRow>> {
    let techniques: Vec<Technique> = config.techniques.iter().copied().filter(|t| t.is_induced()).collect();
    let mut rows = Vec::new();
    for &technique in &techniques {
        for &alpha in &config.sweep_fractions {
            let runs: Vec<Realization> = (0..config.runs)
                .into_par_iter()
                .map(|run| {
                    let spec = config
                        .sampler_spec(technique, realization_seed(config, technique, name, run))
                        .with_induction_fraction(alpha);
                    measure(graph, original, &config.properties, &spec, false)
                })
                .collect::<Result<_>>()?;
            for (slot, &property) in config.properties.iter().enumerate() {
                let per_run: Vec<f64> = runs.iter().map(|r| r.stats[slot]).collect();
                let (mean, std) = mean_std(&per_run);
                rows.push(SweepRow {
                    network: name.to_owned(),
                    technique: technique.name().to_owned(),
                    induction_fraction: alpha,
                    property,
                    mean,
                    std,
                });
            }
        }
    }
    Ok(rows)
}

fn check_expectations(entry: &DatasetEntry, graph: &Graph) -> Result<()> {
    for (what, expected, actual) in [
        ("n", entry.expected_n, graph.node_count()),
        ("m", entry.expected_m, graph.edge_count()),
    ] {
        if let Some(expected) = expected {
            if expected != actual {
                return Err(Error::ExpectationMismatch {
                    name: entry.name.clone(),
                    what,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(())
}

/// Loads every dataset of `config` and runs the experiment on those that
/// load and pass their integrity checks. Datasets that fail are listed in
/// the bundle's `failures`.
pub fn run_experiment(config: &RunConfig) -> Result<ReportBundle> {
    config.validate()?;
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for entry in &config.datasets {
        let outcome = load_edge_list(&entry.path, &IngestOptions::default())
            .and_then(|g| check_expectations(entry, &g).map(|_| g))
            .and_then(|g| run_network(config, &entry.name, &g));
        match outcome {
            Ok(result) => results.push(result),
            Err(e) => failures.push(DatasetFailure {
                name: entry.name.clone(),
                error: e.to_string(),
            }),
        }
    }
    assemble(config, results, failures)
}

/// Runs the experiment on graphs already in memory; `config.datasets` is
/// ignored.
pub fn run_on_graphs(config: &RunConfig, graphs: &[(&str, &Graph)]) -> Result<ReportBundle> {
    let mut checked = config.clone();
    if checked.datasets.is_empty() {
        checked.datasets = graphs
            .iter()
            .map(|(name, _)| DatasetEntry {
                name: (*name).to_owned(),
                path: Default::default(),
                expected_n: None,
                expected_m: None,
            })
            .collect();
    }
    checked.validate()?;
    let results = graphs
        .iter()
        .map(|&(name, g)| run_network(config, name, g))
        .collect::<Result<Vec<_>>>()?;
    assemble(config, results, Vec::new())
}

fn assemble(config: &RunConfig, results: Vec<NetworkResult>, failures: Vec<DatasetFailure>) -> Result<ReportBundle> {
    let technique_names: Vec<String> = config.techniques.iter().map(|t| t.name().to_owned()).collect();
    let network_names: Vec<String> = results.iter().map(|r| r.record.name.clone()).collect();
    let with_residuals = config.techniques.len() >= 3 && !results.is_empty();

    let mut residual_tables = Vec::new();
    let mut summaries = Vec::new();
    for &property in &config.properties {
        if !with_residuals {
            continue;
        }
        let values: Vec<Vec<f64>> = config
            .techniques
            .iter()
            .map(|&t| {
                results
                    .iter()
                    .map(|r| {
                        r.cells
                            .iter()
                            .find(|c| c.technique == t && c.property == property)
                            .expect("every technique measured every property")
                            .value
                    })
                    .collect()
            })
            .collect();
        let matrix = PropertyMatrix::new(technique_names.clone(), network_names.clone(), values)?;
        let residuals = match residual_mode(property) {
            ResidualMode::PeerMean => studentized_residuals(&matrix)?,
            ResidualMode::TrueValue => {
                let truth: Vec<f64> = results
                    .iter()
                    .map(|r| match property {
                        Property::AvgDegree => r.original.average_degree,
                        _ => r.original.density,
                    })
                    .collect();
                studentized_residuals_true(&matrix, &truth)?
            }
        };
        for (i, name) in technique_names.iter().enumerate() {
            let (mean, std) = mean_std(&residuals.residuals[i]);
            summaries.push(SummaryRow {
                property,
                technique: name.clone(),
                mean_residual: Some(mean),
                std_residual: Some(std),
                critical_value: residuals.critical_value,
            });
        }
        residual_tables.push(ResidualTable {
            property,
            matrix: residuals,
        });
    }

    let mut rows = Vec::new();
    for (j, result) in results.iter().enumerate() {
        for (i, &technique) in config.techniques.iter().enumerate() {
            for &property in &config.properties {
                let cell = result
                    .cells
                    .iter()
                    .find(|c| c.technique == technique && c.property == property)
                    .expect("every technique measured every property");
                let table = residual_tables.iter().find(|t| t.property == property);
                let residual = table.map(|t| t.matrix.residuals[i][j]);
                let significant = table.is_some_and(|t| t.matrix.significant[i][j]);
                let (mean, std) = mean_std(&cell.per_run);
                rows.push(ReportRow {
                    network: result.record.name.clone(),
                    technique: technique.name().to_owned(),
                    property,
                    per_run: cell.per_run.clone(),
                    mean,
                    std,
                    value: cell.value,
                    residual,
                    significant,
                    residual_mode: residual_mode(property),
                    uniform_fallbacks: cell.uniform_fallbacks,
                });
            }
        }
    }

    let sweep = results.iter().flat_map(|r| r.sweep.iter().cloned()).collect();
    Ok(ReportBundle {
        master_seed: config.master_seed,
        fraction: config.fraction,
        runs: config.runs,
        networks: results.into_iter().map(|r| r.record).collect(),
        rows,
        residual_tables,
        summaries,
        sweep,
        failures,
    })
}

/// Two-tailed critical value for `techniques` compared techniques.
pub fn critical_value_for(techniques: usize) -> f64 {
    t_critical(techniques.saturating_sub(2).max(1), SIGNIFICANCE_LEVEL)
}
