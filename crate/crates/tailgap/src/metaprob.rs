//! Comparisons between a Pareto mixture and the single law built from the
//! plug-in exponent `alpha_bar`.
//!
//! Averaging densities over exponent uncertainty is not the same as
//! plugging in the average exponent: the mixture is strictly convex in
//! `alpha` pointwise in the far tail, so it eventually dominates the
//! plug-in law there, and asymptotically behaves like the fattest
//! component `alpha_star` alone.  The functions here quantify that
//! disagreement pointwise (density gaps and asymptotes) and in expectation
//! (payoff biases).

use crate::distributions::{Expectation, ParetoLaw, ParetoMixture};
use crate::error::{Error, Result};

/// Pointwise comparison of the mixture density with the plug-in density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub at_x: f64,
    pub mixture_density: f64,
    pub mean_param_density: f64,
    /// `mixture_density - mean_param_density`; positive once the evaluation
    /// point is far enough into the tail.
    pub gap: f64,
}

/// Leading tail coefficient of the mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct TailConstant {
    /// `K` in `pdf(x) ~ K * x^-(alpha_star + 1)`.
    pub k_value: f64,
    pub alpha_star: f64,
    /// Index of the state attaining the minimum exponent.  States with
    /// exactly equal exponents are merged at construction, so this holds a
    /// single index today; kept as a list for forward compatibility.
    pub achieving_states: Vec<usize>,
}

/// Payoff functions with closed-form Pareto expectations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PayoffSpec {
    /// `f(x) = x`.
    Identity,
    /// `f(x) = x^p` for `p > 0`.
    Power(f64),
    /// `f(x) = 1{x > t}`.
    TailIndicator(f64),
    /// `f(x) = min(x, cap)`, the capped exposure.
    Clipped(f64),
}

/// Density gap at one point: mixture minus plug-in.
pub fn density_gap(mix: &ParetoMixture, x: f64) -> Result<GapReport> {
    let mixture_density = mix.pdf(x)?;
    let mean_param_density = mix.mean_param_law().pdf(x)?;
    Ok(GapReport {
        at_x: x,
        mixture_density,
        mean_param_density,
        gap: mixture_density - mean_param_density,
    })
}

/// Far-tail form of the gap: the dominant component alone against the
/// plug-in law, `pdf(x | alpha_star) - pdf(x | alpha_bar)`.
pub fn asymptotic_gap(mix: &ParetoMixture, x: f64) -> Result<f64> {
    let star = mix.star_law().pdf(x)?;
    let mean = mix.mean_param_law().pdf(x)?;
    Ok(star - mean)
}

/// Leading coefficient of the mixture tail,
/// `K = sum over states with alpha_i == alpha_star of phi_i * alpha_i * x_min^alpha_i`.
pub fn tail_constant(mix: &ParetoMixture) -> TailConstant {
    let alpha_star = mix.alpha_star();
    let mut k_value = 0.0;
    let mut achieving_states = Vec::new();
    for (i, state) in mix.meta().states().iter().enumerate() {
        if state.alpha == alpha_star {
            k_value += state.phi * state.alpha * mix.x_min().powf(state.alpha);
            achieving_states.push(i);
        }
    }
    TailConstant {
        k_value,
        alpha_star,
        achieving_states,
    }
}

/// The mixture tail asymptote `K * x^-(alpha_star + 1)`, the curve the
/// mixture density converges to (in ratio) as `x` grows.
pub fn tail_asymptote(mix: &ParetoMixture, x: f64) -> Result<f64> {
    if !x.is_finite() || x < mix.x_min() {
        return Err(Error::Domain(format!(
            "x = {x} lies outside the support [{}, inf)",
            mix.x_min()
        )));
    }
    let tc = tail_constant(mix);
    Ok(tc.k_value * x.powf(-tc.alpha_star - 1.0))
}

/// Evaluates `x^(alpha_star + 1) * pdf(x)` over `grid`; the values converge
/// to the tail constant `K` as `x` grows.
pub fn limit_convergence(mix: &ParetoMixture, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if grid.is_empty() {
        return Err(Error::Config("convergence grid must not be empty".into()));
    }
    let exponent = mix.alpha_star() + 1.0;
    grid.iter()
        .map(|&x| Ok((x, x.powf(exponent) * mix.pdf(x)?)))
        .collect()
}

/// Closed-form expectation of `payoff` under a single Pareto law.
pub fn pareto_expectation(law: &ParetoLaw, payoff: PayoffSpec) -> Result<Expectation> {
    let alpha = law.alpha();
    let x_min = law.x_min();
    match payoff {
        PayoffSpec::Identity => Ok(law.mean()),
        PayoffSpec::Power(p) => {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "p",
                    value: p,
                    reason: "power payoff exponent must be finite and strictly positive",
                });
            }
            if p < alpha {
                Ok(Expectation::Finite(alpha * x_min.powf(p) / (alpha - p)))
            } else {
                Ok(Expectation::Divergent)
            }
        }
        PayoffSpec::TailIndicator(t) => {
            if !t.is_finite() || t < x_min {
                return Err(Error::Domain(format!(
                    "tail threshold t = {t} must lie in the support [{x_min}, inf)"
                )));
            }
            Ok(Expectation::Finite((x_min / t).powf(alpha)))
        }
        PayoffSpec::Clipped(cap) => {
            if !cap.is_finite() || cap < x_min {
                return Err(Error::Domain(format!(
                    "clip cap = {cap} must lie in the support [{x_min}, inf)"
                )));
            }
            // E[min(X, c)] = (alpha x_min - c (x_min/c)^alpha) / (alpha - 1),
            // with the log limit at alpha = 1.  Always finite.
            if alpha == 1.0 {
                Ok(Expectation::Finite(x_min * (1.0 + (cap / x_min).ln())))
            } else {
                let survival = (x_min / cap).powf(alpha);
                Ok(Expectation::Finite(
                    (alpha * x_min - cap * survival) / (alpha - 1.0),
                ))
            }
        }
    }
}

/// Expectation bias of `payoff`: averaged-over-exponents expectation minus
/// the plug-in expectation,
/// `sum(phi_i * E[f | alpha_i]) - E[f | alpha_bar]`.
///
/// Returns `Divergent` when either side fails to exist.  A single-state
/// mixture compares a law against itself, so the bias is exactly zero even
/// for payoffs without finite expectation.
pub fn functional_bias(mix: &ParetoMixture, payoff: PayoffSpec) -> Result<Expectation> {
    if mix.len() == 1 {
        // Validate payoff parameters even on the trivial path.
        pareto_expectation(&mix.component_law(0), payoff)?;
        return Ok(Expectation::Finite(0.0));
    }
    let mut averaged = 0.0;
    let mut divergent = false;
    for (i, state) in mix.meta().states().iter().enumerate() {
        match pareto_expectation(&mix.component_law(i), payoff)? {
            Expectation::Finite(v) => averaged += state.phi * v,
            Expectation::Divergent => divergent = true,
        }
    }
    let plug_in = pareto_expectation(&mix.mean_param_law(), payoff)?;
    match (divergent, plug_in) {
        (false, Expectation::Finite(v)) => Ok(Expectation::Finite(averaged - v)),
        _ => Ok(Expectation::Divergent),
    }
}

/// Clipped-payoff bias as a function of the cap, one point per entry of
/// `caps`.  Nondecreasing in the cap; diverges as the cap grows whenever
/// some state has `alpha <= 1 < alpha_bar`.
pub fn clipping_curve(mix: &ParetoMixture, caps: &[f64]) -> Result<Vec<(f64, f64)>> {
    if caps.is_empty() {
        return Err(Error::Config(
            "clipping curve needs at least one cap".into(),
        ));
    }
    caps.iter()
        .map(|&cap| {
            let bias = functional_bias(mix, PayoffSpec::Clipped(cap))?
                .expect_finite("clipped payoffs are always integrable");
            Ok((cap, bias))
        })
        .collect()
}

/// Locates the point where the density gap turns positive for good.
///
/// Scans a geometric grid on `(x_min, x_hi]` for the last sign change of
/// the gap and refines it by bisection.  Returns `None` when the gap never
/// becomes strictly positive (single-state mixtures), and the scan origin
/// when it is already positive everywhere.
pub fn gap_crossover(mix: &ParetoMixture, x_hi: f64) -> Result<Option<f64>> {
    let x_min = mix.x_min();
    if !x_hi.is_finite() || x_hi <= x_min {
        return Err(Error::Domain(format!(
            "search bound x_hi = {x_hi} must exceed x_min = {x_min}"
        )));
    }
    let gap_at = |x: f64| -> Result<f64> { Ok(density_gap(mix, x)?.gap) };

    // The gap vanishes at x_min itself; start just inside the support.
    let lo = x_min * (1.0 + 1e-9);
    let points = 512;
    let ratio = (x_hi / lo).powf(1.0 / (points - 1) as f64);
    let grid: Vec<f64> = (0..points).map(|i| lo * ratio.powi(i)).collect();

    let mut bracket = None;
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        if gap_at(a)? <= 0.0 && gap_at(b)? > 0.0 {
            bracket = Some((a, b));
        }
    }
    let Some((mut a, mut b)) = bracket else {
        if gap_at(grid[0])? > 0.0 {
            return Ok(Some(grid[0]));
        }
        return Ok(None);
    };
    // Bisection in log space; 100 halvings exhaust f64 resolution.
    for _ in 0..100 {
        let m = (0.5 * (a.ln() + b.ln())).exp();
        let m = if m > a && m < b { m } else { 0.5 * (a + b) };
        if gap_at(m)? <= 0.0 {
            a = m;
        } else {
            b = m;
        }
        if b - a <= f64::EPSILON * b {
            break;
        }
    }
    Ok(Some(0.5 * (a + b)))
}
