use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::StudyConfig;
use crate::error::Result;
use crate::estimators::EstimateResult;

/// Formats a float with 17 significant digits, enough for an exact
/// round-trip through `str::parse::<f64>()`.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Five-point distribution summary computed with the nearest-rank rule:
/// the p-quantile of n sorted values is the one at index `ceil(p * n)`
/// (1-based).  No interpolation, so every reported quantile is an actual
/// observed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantileSummary {
    pub q05: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub q95: f64,
}

impl QuantileSummary {
    pub fn nearest_rank(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut xs = values.to_vec();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite summaries"));
        let pick = |p: f64| {
            let rank = (p * xs.len() as f64).ceil() as usize;
            xs[rank.clamp(1, xs.len()) - 1]
        };
        Some(Self {
            q05: pick(0.05),
            q25: pick(0.25),
            median: pick(0.5),
            q75: pick(0.75),
            q95: pick(0.95),
        })
    }
}

/// Estimates produced by one simulated data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// One Hill estimate per configured `k_fraction`, in config order.
    pub hill: Vec<EstimateResult>,
    /// Exact MLE where the model exposes a known `x_min` (mixtures only).
    pub mle: Option<EstimateResult>,
}

/// Cross-trial summary of the Hill estimator at one tail fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KFractionSummary {
    pub k_fraction: f64,
    pub k_used: usize,
    pub alpha_hat: QuantileSummary,
}

/// Full result of a Monte Carlo estimator study.
///
/// `tail_alpha` is the exponent the estimators are benchmarked against:
/// the dominant mixture exponent `alpha_star`, or the stability index for
/// alpha-stable data.  `alpha_bar` is reported for mixtures only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub config: StudyConfig,
    pub seed_scheme: String,
    pub tail_alpha: f64,
    pub alpha_bar: Option<f64>,
    pub hill: Vec<KFractionSummary>,
    pub mle: Option<QuantileSummary>,
    pub trials: Vec<TrialRecord>,
}

impl StudyReport {
    /// Canonical JSON encoding (pretty, trailing newline).  Field order is
    /// fixed by the struct, so equal reports serialize to equal bytes.
    pub fn to_json_bytes(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json_bytes()?)?;
        Ok(())
    }
}

/// One row of the three-curve density comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub x: f64,
    /// Plug-in density `pdf(x | alpha_bar)`.
    pub density_alpha_bar: f64,
    /// Exact mixture density.
    pub density_mixture: f64,
    /// Dominant tail asymptote `K * x^-(alpha_star + 1)`.
    pub density_alpha_star: f64,
}

/// The density comparison table: plug-in law, exact mixture, and the tail
/// asymptote the mixture converges to.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Data {
    pub rows: Vec<Figure1Row>,
}

impl Figure1Data {
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("x,density_alpha_bar,density_mixture,density_alpha_star\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_g17(row.x),
                fmt_g17(row.density_alpha_bar),
                fmt_g17(row.density_mixture),
                fmt_g17(row.density_alpha_star)
            ));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}
