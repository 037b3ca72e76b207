//! Comparing sampled networks with originals and techniques with each other.
//!
//! Distributions are compared with the two-sample Kolmogorov-Smirnov
//! D-statistic. Techniques are compared with externally studentized
//! residuals: for technique `i` on network `j`,
//!
//! ```text
//! r_ij = (x_ij - mu_ij) / (sigma_ij * sqrt(1 - 1/N))
//! mu_ij      = sum_{k != i} x_kj / (N - 1)
//! sigma_ij^2 = sum_{k != i} (x_kj - mu_ij)^2 / (N - 2)
//! ```
//!
//! Under normal errors `r_ij` follows Student's t with `N - 2` degrees of
//! freedom; a cell is significant when `|r_ij|` exceeds the two-tailed
//! critical value at the chosen level.

use serde::{Deserialize, Serialize};
use statrs::function::beta::inv_beta_reg;

use crate::error::{Error, Result};
use crate::properties::PropertyDistribution;

/// Two-tailed significance level used throughout.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Kolmogorov-Smirnov D: the largest gap between the two empirical CDFs.
pub fn ks_distance(a: &PropertyDistribution, b: &PropertyDistribution) -> Result<f64> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch {
            left: a.kind().name(),
            right: b.kind().name(),
        });
    }
    ks_statistic(a.values(), b.values())
}

/// D-statistic of two ascending-sorted samples.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    debug_assert!(a.windows(2).all(|w| w[0] <= w[1]) && b.windows(2).all(|w| w[0] <= w[1]));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    // Past the end of one sample its CDF is 1; the other's gap only shrinks.
    Ok(d)
}

/// Two-tailed critical value of Student's t with `df` degrees of freedom at
/// level `p`, from the inverse regularized incomplete beta function.
pub fn t_critical(df: usize, p: f64) -> f64 {
    assert!(df >= 1, "t_critical needs at least one degree of freedom");
    assert!(p > 0.0 && p < 1.0, "level {p} not in (0, 1)");
    let nu = df as f64;
    // P(|T| > t) = I_{nu / (nu + t^2)}(nu / 2, 1 / 2)
    let y = inv_beta_reg(0.5 * nu, 0.5, p);
    (nu * (1.0 - y) / y).sqrt()
}

/// Property values `x[i][j]` of network `j` under technique `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyMatrix {
    pub techniques: Vec<String>,
    pub networks: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl PropertyMatrix {
    pub fn new(techniques: Vec<String>, networks: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self {
            techniques,
            networks,
            values,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.values.len() != self.techniques.len() {
            return Err(Error::InvalidMatrix(format!(
                "{} rows for {} techniques",
                self.values.len(),
                self.techniques.len()
            )));
        }
        if let Some(row) = self.values.iter().find(|r| r.len() != self.networks.len()) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} for {} networks",
                row.len(),
                self.networks.len()
            )));
        }
        if self.techniques.len() < 3 {
            return Err(Error::InvalidMatrix(format!(
                "need at least 3 techniques, got {}",
                self.techniques.len()
            )));
        }
        Ok(())
    }

    pub fn technique_count(&self) -> usize {
        self.techniques.len()
    }

    pub fn network_count(&self) -> usize {
        self.networks.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualMode {
    /// Deviation from the leave-one-out mean of the other techniques.
    PeerMean,
    /// Deviation from the property's value on the original network.
    TrueValue,
}

impl ResidualMode {
    pub fn name(self) -> &'static str {
        match self {
            ResidualMode::PeerMean => "peer-mean",
            ResidualMode::TrueValue => "true-value",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualMatrix {
    pub techniques: Vec<String>,
    pub networks: Vec<String>,
    /// Residuals; `±inf` where the leave-one-out spread is zero but the value
    /// differs from the reference.
    #[serde(with = "crate::report::nonfinite_matrix")]
    pub residuals: Vec<Vec<f64>>,
    pub significant: Vec<Vec<bool>>,
    /// Cells whose leave-one-out spread was zero.
    pub degenerate: Vec<Vec<bool>>,
    pub critical_value: f64,
    pub mode: ResidualMode,
}

impl ResidualMatrix {
    pub fn get(&self, technique: usize, network: usize) -> f64 {
        self.residuals[technique][network]
    }
}

/// Residual of one cell against a reference value and the leave-one-out spread.
fn residual_cell(column: &[f64], i: usize, reference: f64) -> (f64, bool) {
    let n = column.len() as f64;
    let ss: f64 = column
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &x)| (x - reference).powi(2))
        .sum();
    let sigma = (ss / (n - 2.0)).sqrt();
    let diff = column[i] - reference;
    if sigma == 0.0 {
        let r = if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        return (r, true);
    }
    (diff / (sigma * (1.0 - 1.0 / n).sqrt()), false)
}

fn residuals_with<F>(x: &PropertyMatrix, mode: ResidualMode, reference: F) -> Result<ResidualMatrix>
where
    F: Fn(&[f64], usize, usize) -> f64,
{
    x.validate()?;
    let n = x.technique_count();
    let critical_value = t_critical(n - 2, SIGNIFICANCE_LEVEL);
    let mut residuals = vec![vec![0.0; x.network_count()]; n];
    let mut degenerate = vec![vec![false; x.network_count()]; n];
    for j in 0..x.network_count() {
        let column = x.column(j);
        for i in 0..n {
            let (r, flat) = residual_cell(&column, i, reference(&column, i, j));
            residuals[i][j] = r;
            degenerate[i][j] = flat;
        }
    }
    let significant = residuals
        .iter()
        .map(|row| row.iter().map(|r| r.abs() > critical_value).collect())
        .collect();
    Ok(ResidualMatrix {
        techniques: x.techniques.clone(),
        networks: x.networks.clone(),
        residuals,
        significant,
        degenerate,
        critical_value,
        mode,
    })
}

/// Externally studentized residuals against the leave-one-out peer mean.
pub fn studentized_residuals(x: &PropertyMatrix) -> Result<ResidualMatrix> {
    residuals_with(x, ResidualMode::PeerMean, |column, i, _| {
        let others: f64 = column.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v).sum();
        others / (column.len() - 1) as f64
    })
}

/// Residuals with the original network's value `truth[j]` in place of the
/// leave-one-out mean, both in the numerator and in the spread.
pub fn studentized_residuals_true(x: &PropertyMatrix, truth: &[f64]) -> Result<ResidualMatrix> {
    if truth.len() != x.network_count() {
        return Err(Error::InvalidMatrix(format!(
            "{} true values for {} networks",
            truth.len(),
            x.network_count()
        )));
    }
    residuals_with(x, ResidualMode::TrueValue, |_, _, j| truth[j])
}
