//! Graph sampling toolkit and technique-comparison harness.
//!
//! - [`graph`]: simple undirected graphs, SNAP edge-list ingestion, samples.
//! - [`properties`]: degree / clustering distributions, average degree, density.
//! - [`samplers`]: random node, degree, link selection, random walk and
//!   forest fire, each with and without subgraph induction.
//! - [`stats`]: Kolmogorov-Smirnov distance, externally studentized residuals.
//! - [`harness`]: seeded multi-run experiments and their reports.
//! - [`registry`]: reference networks and their published statistics.

pub mod config;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod properties;
pub mod registry;
pub mod report;
pub mod samplers;
pub mod stats;

pub use config::{Aggregation, DatasetEntry, OutputConfig, OutputFormat, Property, RunConfig};
pub use error::{Error, Result};
pub use graph::{
    induced_subgraph, load_edge_list, parse_edge_list, save_edge_list, Graph, IngestOptions, Network, Sample,
};
pub use harness::{derive_seed, run_experiment, run_on_graphs};
pub use properties::{
    average_degree, clustering_distribution, degree_distribution, density, summarize, DistributionKind, NetworkSummary,
    PropertyDistribution,
};
pub use report::{emit_report, ReportBundle, ReportRow};
pub use samplers::{sample, SamplerSpec, Technique};
pub use stats::{
    ks_distance, studentized_residuals, studentized_residuals_true, t_critical, PropertyMatrix, ResidualMatrix,
    ResidualMode,
};
