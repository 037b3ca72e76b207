//! Report rows, residual tables and their CSV / JSON emission.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{OutputFormat, Property};
use crate::error::{Error, Result};
use crate::properties::NetworkSummary;
use crate::stats::{ResidualMatrix, ResidualMode};

/// Serde helpers writing non-finite floats as the strings `"inf"`, `"-inf"`
/// and `"nan"` so JSON output stays valid and lossless.
mod real {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn to_repr(x: f64) -> impl Serialize {
        if x.is_finite() {
            Repr::Num(x)
        } else if x.is_nan() {
            Repr::Text("nan".into())
        } else if x > 0.0 {
            Repr::Text("inf".into())
        } else {
            Repr::Text("-inf".into())
        }
    }

    pub fn from_repr<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("not a number: {other:?}"))),
            },
        }
    }

    pub struct Wrapped(pub f64);

    impl Serialize for Wrapped {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            to_repr(self.0).serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            from_repr(d).map(Wrapped)
        }
    }
}

pub(crate) mod nonfinite_opt {
    use super::real::Wrapped;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        x.map(Wrapped).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}

pub(crate) mod nonfinite_matrix {
    use super::real::Wrapped;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Wrapped>> = x.iter().map(|r| r.iter().map(|&v| Wrapped(v)).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
        let rows = Vec::<Vec<Wrapped>>::deserialize(d)?;
        Ok(rows.into_iter().map(|r| r.into_iter().map(|w| w.0).collect()).collect())
    }
}

/// One (network, technique, property) cell of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub network: String,
    pub technique: String,
    pub property: Property,
    /// Per-realization statistic: KS D against the original for
    /// distributions, the raw sampled value for scalar properties.
    pub per_run: Vec<f64>,
    pub mean: f64,
    pub std: f64,
    /// Value entering the residual computation (the mean, or the pooled
    /// statistic under pooled aggregation).
    pub value: f64,
    /// `None` when fewer than three techniques were run.
    #[serde(with = "nonfinite_opt")]
    pub residual: Option<f64>,
    pub significant: bool,
    pub residual_mode: ResidualMode,
    /// Realizations where degree-proportional or link selection had to fill
    /// up with uniformly drawn nodes.
    pub uniform_fallbacks: usize,
}

/// Residual table of one property across all networks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualTable {
    pub property: Property,
    pub matrix: ResidualMatrix,
}

/// Cross-network average residual of one technique for one property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub property: Property,
    pub technique: String,
    #[serde(with = "nonfinite_opt")]
    pub mean_residual: Option<f64>,
    #[serde(with = "nonfinite_opt")]
    pub std_residual: Option<f64>,
    pub critical_value: f64,
}

/// Raw statistics of partially induced samples at one induction fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub network: String,
    pub technique: String,
    pub induction_fraction: f64,
    pub property: Property,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRecord {
    pub name: String,
    pub summary: NetworkSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetFailure {
    pub name: String,
    pub error: String,
}

/// Everything an experiment produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub master_seed: u64,
    pub fraction: f64,
    pub runs: usize,
    pub networks: Vec<NetworkRecord>,
    pub rows: Vec<ReportRow>,
    pub residual_tables: Vec<ResidualTable>,
    pub summaries: Vec<SummaryRow>,
    pub sweep: Vec<SweepRow>,
    pub failures: Vec<DatasetFailure>,
}

impl ReportBundle {
    pub fn row(&self, network: &str, technique: &str, property: Property) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.network == network && r.technique == technique && r.property == property)
    }

    pub fn network(&self, name: &str) -> Option<&NetworkSummary> {
        self.networks.iter().find(|n| n.name == name).map(|n| &n.summary)
    }
}

pub const CSV_HEADER: [&str; 7] = [
    "network",
    "technique",
    "property",
    "mean",
    "std",
    "residual",
    "significant",
];

fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        x.to_string()
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("<csv>", io),
        other => Error::Config(format!("csv: {other:?}")),
    }
}

/// Writes the fixed-header row table.
pub fn write_rows_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.network.as_str(),
            r.technique.as_str(),
            r.property.name(),
            &fmt_real(r.mean),
            &fmt_real(r.std),
            &fmt_opt(r.residual),
            if r.significant { "true" } else { "false" },
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn rows_to_json(rows: &[ReportRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}

pub fn rows_from_json(text: &str) -> Result<Vec<ReportRow>> {
    Ok(serde_json::from_str(text)?)
}

pub fn bundle_from_json(text: &str) -> Result<ReportBundle> {
    Ok(serde_json::from_str(text)?)
}

/// Per-network residuals with the significance band, one file per property.
fn write_plot_csv<W: Write>(table: &ResidualTable, out: W) -> Result<()> {
    let m = &table.matrix;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "network",
        "technique",
        "residual",
        "significant",
        "lower_band",
        "upper_band",
    ])
    .map_err(csv_err)?;
    for (j, network) in m.networks.iter().enumerate() {
        for (i, technique) in m.techniques.iter().enumerate() {
            w.write_record([
                network.as_str(),
                technique.as_str(),
                &fmt_real(m.residuals[i][j]),
                if m.significant[i][j] { "true" } else { "false" },
                &fmt_real(-m.critical_value),
                &fmt_real(m.critical_value),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// Cross-network average residual per technique, one file per property.
fn write_summary_csv<W: Write>(rows: &[&SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["technique", "mean_residual", "std_residual", "lower_band", "upper_band"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.technique.as_str(),
            &fmt_opt(r.mean_residual),
            &fmt_opt(r.std_residual),
            &fmt_real(-r.critical_value),
            &fmt_real(r.critical_value),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn relabel_io(path: &Path) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    }
}

/// Writes `bundle` into `dir` in the requested formats and returns the paths
/// written.
///
/// CSV output is `rows.csv` plus `plot_<property>.csv` and
/// `summary_<property>.csv` for each property with residuals; JSON output is
/// a single `report.json` holding the whole bundle.
pub fn emit_report(bundle: &ReportBundle, dir: &Path, formats: &[OutputFormat]) -> Result<Vec<PathBuf>> {
    if bundle.rows.is_empty() {
        return Err(Error::Config("no report rows to emit".into()));
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    if formats.contains(&OutputFormat::Csv) {
        let path = dir.join("rows.csv");
        write_rows_csv(&bundle.rows, create(&path)?).map_err(relabel_io(&path))?;
        written.push(path);
        for table in &bundle.residual_tables {
            let path = dir.join(format!("plot_{}.csv", table.property.name()));
            write_plot_csv(table, create(&path)?).map_err(relabel_io(&path))?;
            written.push(path);

            let rows: Vec<&SummaryRow> = bundle
                .summaries
                .iter()
                .filter(|s| s.property == table.property)
                .collect();
            let path = dir.join(format!("summary_{}.csv", table.property.name()));
            write_summary_csv(&rows, create(&path)?).map_err(relabel_io(&path))?;
            written.push(path);
        }
    }
    if formats.contains(&OutputFormat::Json) {
        let path = dir.join("report.json");
        let mut out = create(&path)?;
        serde_json::to_writer_pretty(&mut out, bundle)?;
        out.write_all(b"\n")
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
