//! Experiment configuration.
//!
//! Configs are TOML documents:
//!
//! ```toml
//! master_seed = 2015
//! fraction = 0.15
//! runs = 100
//! techniques = ["RNS", "RND", "RLS", "RLI", "RWS", "RWI", "FFS", "FFI"]
//! properties = ["degree_dist", "clustering_dist", "avg_degree", "density"]
//! aggregation = "mean"
//!
//! [output]
//! dir = "results"
//! formats = ["csv", "json"]
//!
//! [[datasets]]
//! name = "ca-hep"
//! path = "data/CA-HepPh.txt"
//! expected_n = 12008
//! ```
//!
//! Relative dataset and output paths are resolved against the directory of
//! the config file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::{SamplerSpec, Technique};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    DegreeDist,
    ClusteringDist,
    AvgDegree,
    Density,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::DegreeDist,
        Property::ClusteringDist,
        Property::AvgDegree,
        Property::Density,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::DegreeDist => "degree_dist",
            Property::ClusteringDist => "clustering_dist",
            Property::AvgDegree => "avg_degree",
            Property::Density => "density",
        }
    }

    pub fn is_distribution(self) -> bool {
        matches!(self, Property::DegreeDist | Property::ClusteringDist)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Mean of the per-realization statistics.
    #[default]
    Mean,
    /// One statistic over all realizations pooled together.
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub name: String,
    pub path: PathBuf,
    #[serde(default)]
    pub expected_n: Option<usize>,
    #[serde(default)]
    pub expected_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_output_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_output_dir(),
            formats: default_formats(),
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv, OutputFormat::Json]
}

fn default_techniques() -> Vec<Technique> {
    Technique::ALL.to_vec()
}

fn default_properties() -> Vec<Property> {
    Property::ALL.to_vec()
}

fn default_fraction() -> f64 {
    SamplerSpec::DEFAULT_FRACTION
}

fn default_runs() -> usize {
    100
}

fn default_p() -> f64 {
    SamplerSpec::DEFAULT_FORWARD_BURNING_P
}

fn default_flyback() -> f64 {
    SamplerSpec::DEFAULT_FLYBACK
}

fn default_stall() -> usize {
    SamplerSpec::DEFAULT_STALL_FACTOR
}

fn default_sweep() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub datasets: Vec<DatasetEntry>,
    #[serde(default = "default_techniques")]
    pub techniques: Vec<Technique>,
    #[serde(default = "default_fraction")]
    pub fraction: f64,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_properties")]
    pub properties: Vec<Property>,
    #[serde(default)]
    pub aggregation: Aggregation,
    /// Share realization seeds across techniques instead of drawing
    /// independent streams per technique.
    #[serde(default)]
    pub paired: bool,
    #[serde(default = "default_p")]
    pub forward_burning_p: f64,
    #[serde(default = "default_flyback")]
    pub flyback: f64,
    #[serde(default = "default_stall")]
    pub stall_factor: usize,
    /// Also run induced techniques with partial induction.
    #[serde(default)]
    pub induction_sweep: bool,
    #[serde(default = "default_sweep")]
    pub sweep_fractions: Vec<f64>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    /// Config with every default and the given datasets.
    pub fn new(datasets: Vec<DatasetEntry>) -> Self {
        Self {
            datasets,
            techniques: default_techniques(),
            fraction: default_fraction(),
            runs: default_runs(),
            master_seed: 0,
            properties: default_properties(),
            aggregation: Aggregation::default(),
            paired: false,
            forward_burning_p: default_p(),
            flyback: default_flyback(),
            stall_factor: default_stall(),
            induction_sweep: false,
            sweep_fractions: default_sweep(),
            output: OutputConfig::default(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config and resolves relative paths against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_toml_str(&text)?;
        if let Some(base) = path.parent() {
            config.resolve_paths(base);
        }
        Ok(config)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        for d in &mut self.datasets {
            if d.path.is_relative() {
                d.path = base.join(&d.path);
            }
        }
        if self.output.dir.is_relative() {
            self.output.dir = base.join(&self.output.dir);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.datasets.is_empty() {
            return Err(Error::Config("at least one dataset is required".into()));
        }
        if self.techniques.is_empty() {
            return Err(Error::Config("at least one technique is required".into()));
        }
        if self.properties.is_empty() {
            return Err(Error::Config("at least one property is required".into()));
        }
        let mut names: Vec<&str> = self.datasets.iter().map(|d| d.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("dataset names must be unique".into()));
        }
        let mut techniques = self.techniques.clone();
        techniques.sort_unstable();
        techniques.dedup();
        if techniques.len() != self.techniques.len() {
            return Err(Error::Config("techniques must be unique".into()));
        }
        if self.sweep_fractions.iter().any(|&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::Config("sweep fractions must lie in (0, 1]".into()));
        }
        // Surface sampler parameter errors before any work starts.
        self.sampler_spec(Technique::Rns, 0).validate()?;
        Ok(())
    }

    pub fn sampler_spec(&self, technique: Technique, seed: u64) -> SamplerSpec {
        SamplerSpec {
            technique,
            fraction: self.fraction,
            seed,
            forward_burning_p: self.forward_burning_p,
            flyback: self.flyback,
            stall_factor: self.stall_factor,
            induction_fraction: 1.0,
        }
    }
}
