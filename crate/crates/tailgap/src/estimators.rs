//! Tail-index estimators: Hill, exact Pareto maximum likelihood, and
//! log-log regression on the empirical survival function.
//!
//! All estimators validate their inputs and fail loudly on degenerate
//! data (ties that carry no tail information) rather than returning NaN.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which estimator produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Hill,
    Mle,
    LogLog,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Hill => write!(f, "hill"),
            Method::Mle => write!(f, "mle"),
            Method::LogLog => write!(f, "loglog"),
        }
    }
}

/// A tail-index estimate together with how it was obtained: `k_used` is
/// the number of upper order statistics for Hill, the sample size for MLE,
/// and the number of survival points for the log-log fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub alpha_hat: f64,
    pub method: Method,
    pub k_used: usize,
    pub n: usize,
}

fn check_positive_finite(samples: &[f64]) -> Result<()> {
    for &x in samples {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!(
                "samples must be finite and strictly positive, found {x}"
            )));
        }
    }
    Ok(())
}

fn sorted_ascending(samples: &[f64]) -> Vec<f64> {
    let mut xs = samples.to_vec();
    // Stable sort keeps tied values in input order.
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    xs
}

/// Hill estimator on the `k` largest order statistics:
/// `alpha_hat = k / sum_{i=1..k} ln(X_(n-i+1) / X_(n-k))`.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<EstimateResult> {
    let n = samples.len();
    if k == 0 {
        return Err(Error::Config("hill estimator needs k >= 1".into()));
    }
    if n < k + 1 {
        return Err(Error::InsufficientSamples {
            needed: k + 1,
            got: n,
        });
    }
    check_positive_finite(samples)?;
    let xs = sorted_ascending(samples);
    let baseline = xs[n - k - 1];
    let sum: f64 = xs[n - k..].iter().map(|&x| (x / baseline).ln()).sum();
    if sum <= 0.0 {
        return Err(Error::Degenerate(format!(
            "top {k} order statistics are all tied with the baseline {baseline}"
        )));
    }
    Ok(EstimateResult {
        alpha_hat: k as f64 / sum,
        method: Method::Hill,
        k_used: k,
        n,
    })
}

/// Exact maximum-likelihood exponent for a Pareto law with known `x_min`:
/// `alpha_hat = n / sum(ln(x_i / x_min))`.
pub fn pareto_mle(samples: &[f64], x_min: f64) -> Result<EstimateResult> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    if !x_min.is_finite() || x_min <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "x_min",
            value: x_min,
            reason: "support lower bound must be finite and strictly positive",
        });
    }
    check_positive_finite(samples)?;
    let mut sum = 0.0;
    for &x in samples {
        if x < x_min {
            return Err(Error::Domain(format!(
                "sample {x} lies below the support bound x_min = {x_min}"
            )));
        }
        sum += (x / x_min).ln();
    }
    if sum <= 0.0 {
        return Err(Error::Degenerate(format!(
            "all samples equal x_min = {x_min}; the likelihood has no maximizer"
        )));
    }
    Ok(EstimateResult {
        alpha_hat: n as f64 / sum,
        method: Method::Mle,
        k_used: n,
        n,
    })
}

/// Ordinary least squares slope of `ln y` against `ln x`.
///
/// For survival data the slope is minus the tail exponent.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let mut logs = Vec::with_capacity(points.len());
    for &(x, y) in points {
        if !x.is_finite() || x <= 0.0 || !y.is_finite() || y <= 0.0 {
            return Err(Error::Domain(format!(
                "log-log regression needs strictly positive finite points, found ({x}, {y})"
            )));
        }
        logs.push((x.ln(), y.ln()));
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (lx, ly) in logs {
        sxx += (lx - mean_x) * (lx - mean_x);
        sxy += (lx - mean_x) * (ly - mean_y);
    }
    if sxx <= 0.0 {
        return Err(Error::Degenerate(
            "all abscissae coincide; the slope is undefined".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// Empirical survival pairs `(x, P_n(X > x))` at each distinct sample
/// value, using the rank rule `(n - i) / n` at the last occurrence of each
/// value.  The largest value (survival zero) is omitted so the output can
/// feed a log-log fit directly.
pub fn empirical_survival(samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    check_positive_finite(samples)?;
    let xs = sorted_ascending(samples);
    let mut out = Vec::new();
    for i in 0..n {
        let last_of_run = i + 1 == n || xs[i + 1] > xs[i];
        if last_of_run && i + 1 < n {
            out.push((xs[i], (n - i - 1) as f64 / n as f64));
        }
    }
    Ok(out)
}

/// Tail exponent from a log-log fit of the empirical survival curve:
/// builds the survival points and negates the regression slope.
pub fn loglog_tail_estimate(samples: &[f64]) -> Result<EstimateResult> {
    let points = empirical_survival(samples)?;
    let slope = loglog_slope(&points)?;
    Ok(EstimateResult {
        alpha_hat: -slope,
        method: Method::LogLog,
        k_used: points.len(),
        n: samples.len(),
    })
}

/// Converts a tail fraction into an order-statistic count:
/// `floor(fraction * n)` clamped to `[1, n - 1]`.
pub fn k_from_fraction(n: usize, fraction: f64) -> Result<usize> {
    if !fraction.is_finite() || fraction <= 0.0 || fraction >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "k_fraction",
            value: fraction,
            reason: "tail fraction must lie strictly between 0 and 1",
        });
    }
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    Ok(((fraction * n as f64).floor() as usize).clamp(1, n - 1))
}
