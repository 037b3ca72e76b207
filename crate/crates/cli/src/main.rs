use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use netsampler_core::registry::{check_summary, Registry};
use netsampler_core::{
    emit_report, load_edge_list, run_experiment, sample, save_edge_list, summarize, IngestOptions, RunConfig,
    SamplerSpec, Technique,
};

#[derive(Parser)]
#[command(
    name = "netsampler",
    version,
    about = "Sample networks and compare sampling techniques"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a full comparison experiment described by a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the output directory of the config.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Share realization seeds across techniques.
        #[arg(long)]
        paired: bool,
    },
    /// Draw one sample and write it as an edge list.
    Sample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        technique: Technique,
        #[arg(long, default_value_t = SamplerSpec::DEFAULT_FRACTION)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        induction_fraction: f64,
        #[arg(long, default_value_t = SamplerSpec::DEFAULT_FORWARD_BURNING_P)]
        forward_burning_p: f64,
        #[arg(long, default_value_t = SamplerSpec::DEFAULT_FLYBACK)]
        flyback: f64,
        #[arg(long, default_value_t = SamplerSpec::DEFAULT_STALL_FACTOR)]
        stall_factor: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print node and link counts, average degree, clustering and density.
    Props {
        #[arg(long)]
        input: PathBuf,
        /// Compare against this network of the registry; exits nonzero on
        /// any mismatch.
        #[arg(long)]
        check: Option<String>,
        /// Registry file to use instead of the bundled one.
        #[arg(long, requires = "check")]
        registry: Option<PathBuf>,
    },
}

fn load(path: &PathBuf) -> Result<netsampler_core::Graph> {
    load_edge_list(path, &IngestOptions::default()).with_context(|| format!("loading {}", path.display()))
}

fn run(config: PathBuf, output: Option<PathBuf>, paired: bool) -> Result<()> {
    let mut config = RunConfig::load(&config).with_context(|| format!("reading config {}", config.display()))?;
    if let Some(dir) = output {
        config.output.dir = dir;
    }
    config.paired |= paired;
    let bundle = run_experiment(&config)?;
    for f in &bundle.failures {
        eprintln!("skipped dataset {}: {}", f.name, f.error);
    }
    if bundle.networks.is_empty() {
        bail!("no dataset could be processed");
    }
    for path in emit_report(&bundle, &config.output.dir, &config.output.formats)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn props(input: PathBuf, check: Option<String>, registry: Option<PathBuf>) -> Result<bool> {
    let g = load(&input)?;
    let s = summarize(&g)?;
    let stats = g.ingest_stats();
    println!("nodes: {}", s.nodes);
    println!("links: {}", s.links);
    println!("average_degree: {}", s.average_degree);
    println!("clustering: {}", s.clustering);
    println!("density: {}", s.density);
    println!("self_loops_dropped: {}", stats.self_loops_dropped);
    println!("duplicates_dropped: {}", stats.duplicates_dropped);
    let Some(name) = check else {
        return Ok(true);
    };
    let registry = match registry {
        Some(path) => Registry::load(&path)?,
        None => Registry::builtin(),
    };
    let entry = registry
        .get(&name)
        .with_context(|| format!("network {name:?} is not in the registry"))?;
    let mut ok = true;
    for c in check_summary(entry, &s) {
        ok &= c.pass;
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        println!("check {}: {verdict} expected {} got {}", c.what, c.expected, c.actual);
    }
    Ok(ok)
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut out = e.to_string();
    let mut last = out.clone();
    for cause in e.chain().skip(1) {
        let text = cause.to_string();
        if !last.contains(&text) {
            out.push_str(": ");
            out.push_str(&text);
        }
        last = text;
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, output, paired } => run(config, output, paired).map(|_| true),
        Command::Sample {
            input,
            technique,
            fraction,
            seed,
            induction_fraction,
            forward_burning_p,
            flyback,
            stall_factor,
            output,
        } => (|| {
            let g = load(&input)?;
            let mut spec = SamplerSpec::new(technique, seed)
                .with_fraction(fraction)
                .with_induction_fraction(induction_fraction)
                .with_forward_burning_p(forward_burning_p)
                .with_flyback(flyback);
            spec.stall_factor = stall_factor;
            let s = sample(&g, &spec)?;
            save_edge_list(&s.to_graph(), &output).with_context(|| format!("writing {}", output.display()))?;
            println!(
                "{} nodes, {} links -> {}",
                s.node_count(),
                s.edge_count(),
                output.display()
            );
            Ok(true)
        })(),
        Command::Props { input, check, registry } => props(input, check, registry),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::FAILURE
        }
    }
}
