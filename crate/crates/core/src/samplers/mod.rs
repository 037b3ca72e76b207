//! The eight sampling techniques.
//!
//! Random selection: [`Technique::Rns`], [`Technique::Rnd`], [`Technique::Rls`],
//! [`Technique::Rli`]. Network exploration: [`Technique::Rws`],
//! [`Technique::Rwi`], [`Technique::Ffs`], [`Technique::Ffi`].
//!
//! Every technique targets `ceil(fraction * n)` sampled nodes. The induced
//! variants of link, walk and fire sampling run the exact same selection as
//! their base technique (same RNG stream) and then add mutual links between
//! the selected nodes. Partial induction keeps each candidate link when a
//! uniform variate keyed by `(link, seed)` falls below the induction
//! fraction, so raising the fraction only ever adds links.

mod exploration;
mod induction;
mod random_selection;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Sample};

pub use exploration::{ffi, ffs, rwi, rws, BurnDistribution};
pub use induction::edge_uniform;
pub use random_selection::{rli, rls, rnd, rns};

/// RNG used by every sampler. Pinned so samples are reproducible across
/// platforms and releases.
pub type SamplerRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Technique {
    #[serde(rename = "RNS")]
    Rns,
    #[serde(rename = "RND")]
    Rnd,
    #[serde(rename = "RLS")]
    Rls,
    #[serde(rename = "RLI")]
    Rli,
    #[serde(rename = "RWS")]
    Rws,
    #[serde(rename = "RWI")]
    Rwi,
    #[serde(rename = "FFS")]
    Ffs,
    #[serde(rename = "FFI")]
    Ffi,
}

impl Technique {
    pub const ALL: [Technique; 8] = [
        Technique::Rns,
        Technique::Rnd,
        Technique::Rls,
        Technique::Rli,
        Technique::Rws,
        Technique::Rwi,
        Technique::Ffs,
        Technique::Ffi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Technique::Rns => "RNS",
            Technique::Rnd => "RND",
            Technique::Rls => "RLS",
            Technique::Rli => "RLI",
            Technique::Rws => "RWS",
            Technique::Rwi => "RWI",
            Technique::Ffs => "FFS",
            Technique::Ffi => "FFI",
        }
    }

    /// Whether the technique adds mutual links between sampled nodes.
    pub fn is_induced(self) -> bool {
        !matches!(self, Technique::Rls | Technique::Rws | Technique::Ffs)
    }

    /// Stable small integer used in seed derivation.
    pub fn ordinal(self) -> u8 {
        match self {
            Technique::Rns => 0,
            Technique::Rnd => 1,
            Technique::Rls => 2,
            Technique::Rli => 3,
            Technique::Rws => 4,
            Technique::Rwi => 5,
            Technique::Ffs => 6,
            Technique::Ffi => 7,
        }
    }

    /// The induced counterpart of a non-induced technique.
    pub fn induced_twin(self) -> Option<Technique> {
        match self {
            Technique::Rls => Some(Technique::Rli),
            Technique::Rws => Some(Technique::Rwi),
            Technique::Ffs => Some(Technique::Ffi),
            _ => None,
        }
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Technique::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown technique {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub technique: Technique,
    /// Target share of original nodes, in (0, 1).
    pub fraction: f64,
    pub seed: u64,
    /// Forest-fire forward burning probability; burn counts have mean p / (1 - p).
    pub forward_burning_p: f64,
    /// Random-walk probability of flying back to the current start node.
    pub flyback: f64,
    /// A walk restarts after `stall_factor * |V'|` steps without a new node.
    pub stall_factor: usize,
    /// Share of candidate induced links kept, in (0, 1]. Ignored by
    /// techniques without induction.
    pub induction_fraction: f64,
}

impl SamplerSpec {
    pub const DEFAULT_FRACTION: f64 = 0.15;
    pub const DEFAULT_FORWARD_BURNING_P: f64 = 0.7;
    pub const DEFAULT_FLYBACK: f64 = 0.15;
    pub const DEFAULT_STALL_FACTOR: usize = 100;

    pub fn new(technique: Technique, seed: u64) -> Self {
        Self {
            technique,
            fraction: Self::DEFAULT_FRACTION,
            seed,
            forward_burning_p: Self::DEFAULT_FORWARD_BURNING_P,
            flyback: Self::DEFAULT_FLYBACK,
            stall_factor: Self::DEFAULT_STALL_FACTOR,
            induction_fraction: 1.0,
        }
    }

    pub fn with_fraction(mut self, fraction: f64) -> Self {
        self.fraction = fraction;
        self
    }

    pub fn with_induction_fraction(mut self, alpha: f64) -> Self {
        self.induction_fraction = alpha;
        self
    }

    pub fn with_flyback(mut self, c: f64) -> Self {
        self.flyback = c;
        self
    }

    pub fn with_forward_burning_p(mut self, p: f64) -> Self {
        self.forward_burning_p = p;
        self
    }

    pub fn with_technique(mut self, technique: Technique) -> Self {
        self.technique = technique;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if !open_unit(self.fraction) {
            return Err(Error::InvalidSpec(format!("fraction {} not in (0, 1)", self.fraction)));
        }
        if !open_unit(self.forward_burning_p) {
            return Err(Error::InvalidSpec(format!(
                "forward burning probability {} not in (0, 1)",
                self.forward_burning_p
            )));
        }
        if !(0.0..1.0).contains(&self.flyback) {
            return Err(Error::InvalidSpec(format!(
                "fly-back probability {} not in [0, 1)",
                self.flyback
            )));
        }
        if !(self.induction_fraction > 0.0 && self.induction_fraction <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "induction fraction {} not in (0, 1]",
                self.induction_fraction
            )));
        }
        if self.stall_factor == 0 {
            return Err(Error::InvalidSpec("stall factor must be positive".into()));
        }
        Ok(())
    }

    /// `ceil(fraction * n)`.
    pub fn target_nodes(&self, node_count: usize) -> usize {
        (self.fraction * node_count as f64).ceil() as usize
    }

    fn rng(&self) -> SamplerRng {
        SamplerRng::seed_from_u64(self.seed)
    }
}

/// Validates `spec` against `g` and returns the node target.
fn checked_target(g: &Graph, spec: &SamplerSpec) -> Result<usize> {
    spec.validate()?;
    let target = spec.target_nodes(g.node_count());
    if target > g.node_count() {
        return Err(Error::TargetTooLarge {
            target,
            node_count: g.node_count(),
        });
    }
    if target < 2 {
        return Err(Error::InvalidSpec(format!(
            "fraction {} of {} nodes gives a target below 2",
            spec.fraction,
            g.node_count()
        )));
    }
    Ok(target)
}

/// Draws a sample with the technique named in `spec`.
pub fn sample<'g>(g: &'g Graph, spec: &SamplerSpec) -> Result<Sample<'g>> {
    match spec.technique {
        Technique::Rns => rns(g, spec),
        Technique::Rnd => rnd(g, spec),
        Technique::Rls => rls(g, spec),
        Technique::Rli => rli(g, spec),
        Technique::Rws => rws(g, spec),
        Technique::Rwi => rwi(g, spec),
        Technique::Ffs => ffs(g, spec),
        Technique::Ffi => ffi(g, spec),
    }
}

/// Node selection plus the links the selection itself picked.
struct Selection {
    nodes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    uniform_fallback: bool,
}

/// Tags `selection` as drawn by `technique` and, for induced techniques,
/// applies (partial) induction.
fn finish<'g>(g: &'g Graph, spec: &SamplerSpec, technique: Technique, selection: Selection) -> Sample<'g> {
    let Selection {
        nodes,
        mut edges,
        uniform_fallback,
    } = selection;
    let alpha = technique.is_induced().then_some(spec.induction_fraction);
    if let Some(alpha) = alpha {
        edges = induction::induce(g, &nodes, edges, alpha, spec.seed);
    }
    let mut sample = Sample::new(g, nodes, edges);
    sample.technique = Some(technique);
    sample.seed = Some(spec.seed);
    sample.induction_fraction = alpha;
    sample.uniform_fallback = uniform_fallback;
    sample
}
