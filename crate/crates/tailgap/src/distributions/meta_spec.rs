use super::mixture::MetaDistribution;
use crate::error::{Error, Result};

/// Continuous family for the exponent law, to be discretized before use.
#[derive(Debug, Clone, PartialEq)]
pub enum MetaFamily {
    /// Uniform density on `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// Triangular density on `[lo, hi]` peaking at `mode`.
    Triangular { lo: f64, mode: f64, hi: f64 },
    /// Already-discrete states, passed through unchanged.
    Discrete(Vec<(f64, f64)>),
}

/// A continuous (or passthrough) exponent law plus the number of
/// quadrature nodes used to reduce it to a [`MetaDistribution`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousMetaSpec {
    family: MetaFamily,
    node_count: usize,
}

impl ContinuousMetaSpec {
    /// Validates support bounds (`0 < lo <= mode <= hi`, all finite) and
    /// `node_count >= 1`.  Zero-width supports are allowed and collapse to
    /// a single state.
    pub fn new(family: MetaFamily, node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Config("node_count must be at least 1".into()));
        }
        match &family {
            MetaFamily::Uniform { lo, hi } => {
                check_bound("lo", *lo)?;
                check_bound("hi", *hi)?;
                if hi < lo {
                    return Err(Error::InvalidParameter {
                        name: "hi",
                        value: *hi,
                        reason: "upper bound must not fall below lower bound",
                    });
                }
            }
            MetaFamily::Triangular { lo, mode, hi } => {
                check_bound("lo", *lo)?;
                check_bound("mode", *mode)?;
                check_bound("hi", *hi)?;
                if hi < lo || mode < lo || mode > hi {
                    return Err(Error::InvalidParameter {
                        name: "mode",
                        value: *mode,
                        reason: "triangular bounds must satisfy lo <= mode <= hi",
                    });
                }
            }
            MetaFamily::Discrete(states) => {
                if states.is_empty() {
                    return Err(Error::Config(
                        "discrete family needs at least one state".into(),
                    ));
                }
            }
        }
        Ok(Self { family, node_count })
    }

    pub fn family(&self) -> &MetaFamily {
        &self.family
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Reduces the family to a discrete metadistribution.
    ///
    /// Continuous families use Gauss-Legendre nodes, so any polynomial
    /// moment up to degree `2 * node_count - 1` (times the density) is
    /// integrated exactly; the discrete family ignores `node_count`.
    pub fn discretize(&self) -> Result<MetaDistribution> {
        match &self.family {
            MetaFamily::Uniform { lo, hi } => {
                if lo == hi {
                    return MetaDistribution::single(*lo);
                }
                let mid = 0.5 * (lo + hi);
                let half = 0.5 * (hi - lo);
                let states = gauss_legendre(self.node_count)
                    .into_iter()
                    .map(|(t, w)| (mid + half * t, 0.5 * w))
                    .collect();
                MetaDistribution::normalized(states)
            }
            MetaFamily::Triangular { lo, mode, hi } => {
                if lo == hi {
                    return MetaDistribution::single(*lo);
                }
                if self.node_count == 1 {
                    // One node preserves the first moment.
                    return MetaDistribution::single((lo + mode + hi) / 3.0);
                }
                let width = hi - lo;
                let mut states = Vec::with_capacity(self.node_count);
                let left_nodes = if mode == lo {
                    0
                } else if mode == hi {
                    self.node_count
                } else {
                    (self.node_count / 2).max(1)
                };
                if left_nodes > 0 {
                    // Rising edge: density 2 (x - lo) / (width * (mode - lo)).
                    let mid = 0.5 * (lo + mode);
                    let half = 0.5 * (mode - lo);
                    for (t, w) in gauss_legendre(left_nodes) {
                        let x = mid + half * t;
                        let f = 2.0 * (x - lo) / (width * (mode - lo));
                        states.push((x, w * half * f));
                    }
                }
                let right_nodes = self.node_count - left_nodes;
                if right_nodes > 0 {
                    // Falling edge: density 2 (hi - x) / (width * (hi - mode)).
                    let mid = 0.5 * (mode + hi);
                    let half = 0.5 * (hi - mode);
                    for (t, w) in gauss_legendre(right_nodes) {
                        let x = mid + half * t;
                        let f = 2.0 * (hi - x) / (width * (hi - mode));
                        states.push((x, w * half * f));
                    }
                }
                MetaDistribution::normalized(states)
            }
            MetaFamily::Discrete(states) => MetaDistribution::new(states.clone()),
        }
    }
}

fn check_bound(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "exponent support bound must be finite and strictly positive",
        });
    }
    Ok(())
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending by node.
///
/// Newton iteration on the Legendre recurrence; roots are accurate to a
/// few ulps for any practical `n`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..64 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                let jf = j as f64;
                p0 = ((2.0 * jf + 1.0) * x * p1 - jf * p2) / (jf + 1.0);
            }
            dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    nodes.into_iter().zip(weights).collect()
}
