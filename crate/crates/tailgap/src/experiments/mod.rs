//! Monte Carlo studies of tail-index estimation bias, plus deterministic
//! curve emitters.
//!
//! Reproducibility contract: every trial draws from its own ChaCha8 stream
//! keyed by `(base_seed, trial_index)`, so reports are byte-identical
//! across runs, thread counts, and trial execution orders.

mod report;

pub use report::{
    fmt_g17, Figure1Data, Figure1Row, KFractionSummary, QuantileSummary, StudyReport, TrialRecord,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{ParetoMixture, StableParams};
use crate::error::{Error, Result};
use crate::estimators::{hill_estimator, k_from_fraction, pareto_mle};

/// Data-generating model for a study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Pareto mixture with exponents `alphas`, weights `phis`, and a
    /// shared support bound.
    Mixture {
        alphas: Vec<f64>,
        phis: Vec<f64>,
        x_min: f64,
    },
    /// Alpha-stable law; estimators run on `|X|`, whose tail exponent is
    /// the stability index.
    Stable {
        alpha: f64,
        beta: f64,
        scale: f64,
        location: f64,
    },
}

/// Full specification of a Monte Carlo study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub model: ModelSpec,
    pub n_samples: usize,
    pub n_trials: usize,
    pub base_seed: u64,
    /// Tail fractions handed to the Hill estimator, one estimate each.
    pub k_fractions: Vec<f64>,
}

impl StudyConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 2 {
            return Err(Error::Config("n_samples must be at least 2".into()));
        }
        if self.n_trials == 0 {
            return Err(Error::Config("n_trials must be at least 1".into()));
        }
        if self.k_fractions.is_empty() {
            return Err(Error::Config("k_fractions must not be empty".into()));
        }
        for &f in &self.k_fractions {
            k_from_fraction(self.n_samples, f)?;
        }
        match &self.model {
            ModelSpec::Mixture {
                alphas,
                phis,
                x_min,
            } => {
                ParetoMixture::from_parts(alphas, phis, *x_min)?;
            }
            ModelSpec::Stable {
                alpha,
                beta,
                scale,
                location,
            } => {
                StableParams::new(*alpha, *beta, *scale, *location)?;
                if *alpha >= 2.0 {
                    return Err(Error::Config(
                        "stable study needs alpha < 2; at alpha = 2 there is no power tail".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn mixture(&self) -> Result<ParetoMixture> {
        match &self.model {
            ModelSpec::Mixture {
                alphas,
                phis,
                x_min,
            } => ParetoMixture::from_parts(alphas, phis, *x_min),
            ModelSpec::Stable { .. } => Err(Error::Config(
                "this study driver needs a mixture model".into(),
            )),
        }
    }

    fn stable(&self) -> Result<StableParams> {
        match &self.model {
            ModelSpec::Stable {
                alpha,
                beta,
                scale,
                location,
            } => StableParams::new(*alpha, *beta, *scale, *location),
            ModelSpec::Mixture { .. } => Err(Error::Config(
                "this study driver needs a stable model".into(),
            )),
        }
    }
}

/// RNG for one trial: the base seed keys the cipher, the trial index picks
/// the counter stream.  Streams never overlap, so trials are independent
/// and any execution order yields the same draws.
pub fn seed_stream(base_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(trial_index);
    rng
}

const SEED_SCHEME: &str = "chacha8: seed_from_u64(base_seed), set_stream(trial_index)";

fn hill_over_fractions(
    xs: &[f64],
    k_fractions: &[f64],
) -> Result<Vec<crate::estimators::EstimateResult>> {
    k_fractions
        .iter()
        .map(|&f| hill_estimator(xs, k_from_fraction(xs.len(), f)?))
        .collect()
}

fn mixture_trial(mix: &ParetoMixture, cfg: &StudyConfig, trial: usize) -> Result<TrialRecord> {
    let mut rng = seed_stream(cfg.base_seed, trial as u64);
    let xs = mix.sample(&mut rng, cfg.n_samples);
    Ok(TrialRecord {
        trial,
        hill: hill_over_fractions(&xs, &cfg.k_fractions)?,
        mle: Some(pareto_mle(&xs, mix.x_min())?),
    })
}

fn stable_trial(params: &StableParams, cfg: &StudyConfig, trial: usize) -> Result<TrialRecord> {
    let mut rng = seed_stream(cfg.base_seed, trial as u64);
    let xs: Vec<f64> = params
        .sample(&mut rng, cfg.n_samples)
        .into_iter()
        .map(f64::abs)
        .collect();
    Ok(TrialRecord {
        trial,
        hill: hill_over_fractions(&xs, &cfg.k_fractions)?,
        mle: None,
    })
}

/// Runs the trials of a mixture study sequentially in the given index
/// order, then restores index order.  Exists so tests can verify that
/// execution order does not leak into results; the public drivers run the
/// same trial function in parallel.
#[doc(hidden)]
pub fn run_mixture_trials_ordered(cfg: &StudyConfig, order: &[usize]) -> Result<Vec<TrialRecord>> {
    let mix = cfg.mixture()?;
    let mut records = order
        .iter()
        .map(|&i| mixture_trial(&mix, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.trial);
    Ok(records)
}

fn summarize(cfg: &StudyConfig, trials: &[TrialRecord]) -> Result<Vec<KFractionSummary>> {
    cfg.k_fractions
        .iter()
        .enumerate()
        .map(|(j, &f)| {
            let alpha_hats: Vec<f64> = trials.iter().map(|t| t.hill[j].alpha_hat).collect();
            Ok(KFractionSummary {
                k_fraction: f,
                k_used: k_from_fraction(cfg.n_samples, f)?,
                alpha_hat: QuantileSummary::nearest_rank(&alpha_hats)
                    .expect("n_trials >= 1 was validated"),
            })
        })
        .collect()
}

/// Monte Carlo bias study on mixture data: per-trial Hill estimates at
/// each tail fraction plus the exact-`x_min` MLE, with cross-trial
/// quantile summaries.
pub fn study_mixture_bias(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let mix = cfg.mixture()?;
    let trials = (0..cfg.n_trials)
        .into_par_iter()
        .map(|i| mixture_trial(&mix, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    let mle_values: Vec<f64> = trials
        .iter()
        .filter_map(|t| t.mle.map(|m| m.alpha_hat))
        .collect();
    Ok(StudyReport {
        config: cfg.clone(),
        seed_scheme: SEED_SCHEME.into(),
        tail_alpha: mix.alpha_star(),
        alpha_bar: Some(mix.alpha_bar()),
        hill: summarize(cfg, &trials)?,
        mle: QuantileSummary::nearest_rank(&mle_values),
        trials,
    })
}

/// Monte Carlo study on alpha-stable data: Hill estimates on `|X|`, whose
/// true tail exponent is the stability index.
pub fn study_stable(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let params = cfg.stable()?;
    let trials = (0..cfg.n_trials)
        .into_par_iter()
        .map(|i| stable_trial(&params, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(StudyReport {
        config: cfg.clone(),
        seed_scheme: SEED_SCHEME.into(),
        tail_alpha: params.alpha(),
        alpha_bar: None,
        hill: summarize(cfg, &trials)?,
        mle: None,
        trials,
    })
}

/// Geometric grid from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Config("grid needs at least 2 points".into()));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo {
        return Err(Error::Domain(format!(
            "grid bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    let mut grid: Vec<f64> = (0..points).map(|i| lo * ratio.powi(i as i32)).collect();
    // Pin the endpoint; powi rounding can miss hi by an ulp.
    grid[points - 1] = hi;
    Ok(grid)
}

/// Builds the three-curve density table (plug-in, mixture, tail asymptote)
/// on a geometric grid from `x_min` to `x_hi`.
pub fn emit_figure1(mix: &ParetoMixture, x_hi: f64, points: usize) -> Result<Figure1Data> {
    let grid = log_grid(mix.x_min(), x_hi, points)?;
    let mean_law = mix.mean_param_law();
    let rows = grid
        .into_iter()
        .map(|x| {
            Ok(Figure1Row {
                x,
                density_alpha_bar: mean_law.pdf(x)?,
                density_mixture: mix.pdf(x)?,
                density_alpha_star: crate::metaprob::tail_asymptote(mix, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Figure1Data { rows })
}
