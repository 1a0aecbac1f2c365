use rand::Rng;

use super::ParetoLaw;
use crate::error::{Error, Result};

/// Weight tolerance accepted by [`MetaDistribution::new`]: the states must
/// arrive already normalized up to accumulated rounding.
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Weights smaller than this after normalization carry no mass worth
/// tracking and are dropped.
const WEIGHT_FLOOR: f64 = 1e-15;

/// One state of a discrete metadistribution: tail exponent `alpha` held
/// with probability `phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetaState {
    pub alpha: f64,
    pub phi: f64,
}

/// Discrete probability law over the tail exponent.
///
/// States are stored sorted by ascending `alpha` with exact-duplicate
/// exponents merged, so iteration order (and therefore every accumulation
/// in the crate) is deterministic and independent of input order.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaDistribution {
    states: Vec<MetaState>,
}

impl MetaDistribution {
    /// Builds a metadistribution from `(alpha, phi)` pairs whose weights
    /// already sum to 1 within `1e-12`.
    pub fn new(states: Vec<(f64, f64)>) -> Result<Self> {
        let sum = Self::validate_states(&states)?;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter {
                name: "phi_sum",
                value: sum,
                reason: "state weights must sum to 1 within 1e-12",
            });
        }
        Ok(Self::assemble(states, sum))
    }

    /// Builds a metadistribution rescaling arbitrary positive weights to
    /// sum to 1.  Used by callers that accept unnormalized input.
    pub fn normalized(states: Vec<(f64, f64)>) -> Result<Self> {
        let sum = Self::validate_states(&states)?;
        Ok(Self::assemble(states, sum))
    }

    /// Metadistribution concentrated on a single exponent.
    pub fn single(alpha: f64) -> Result<Self> {
        Self::new(vec![(alpha, 1.0)])
    }

    fn validate_states(states: &[(f64, f64)]) -> Result<f64> {
        if states.is_empty() {
            return Err(Error::Config(
                "metadistribution needs at least one state".into(),
            ));
        }
        let mut sum = 0.0;
        for &(alpha, phi) in states {
            if !alpha.is_finite() || alpha <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "alpha",
                    value: alpha,
                    reason: "tail exponent must be finite and strictly positive",
                });
            }
            if !phi.is_finite() || phi <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "phi",
                    value: phi,
                    reason: "state weight must be finite and strictly positive",
                });
            }
            sum += phi;
        }
        Ok(sum)
    }

    /// Sorts, merges exact-duplicate exponents, normalizes by `sum`, and
    /// drops vanishing weights (renormalizing the remainder).
    fn assemble(mut states: Vec<(f64, f64)>, sum: f64) -> Self {
        states.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite alphas"));
        let mut merged: Vec<MetaState> = Vec::with_capacity(states.len());
        for (alpha, phi) in states {
            match merged.last_mut() {
                Some(last) if last.alpha == alpha => last.phi += phi,
                _ => merged.push(MetaState { alpha, phi }),
            }
        }
        for state in &mut merged {
            state.phi /= sum;
        }
        merged.retain(|s| s.phi >= WEIGHT_FLOOR);
        // Normalized input always leaves at least the largest weight.
        debug_assert!(!merged.is_empty());
        let residual: f64 = merged.iter().map(|s| s.phi).sum();
        for state in &mut merged {
            state.phi /= residual;
        }
        Self { states: merged }
    }

    pub fn states(&self) -> &[MetaState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Weighted mean exponent `sum(phi_i * alpha_i)`.
    pub fn mean_alpha(&self) -> f64 {
        self.states.iter().map(|s| s.phi * s.alpha).sum()
    }

    /// Smallest exponent in the support.  States are sorted, so this is the
    /// first one.
    pub fn min_alpha(&self) -> f64 {
        self.states[0].alpha
    }
}

/// Finite mixture of Pareto laws sharing one support bound.
///
/// A [`MetaDistribution`] over the exponent plus a common `x_min` fully
/// determines the mixture; per-component `x_min` values are deliberately
/// unrepresentable.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoMixture {
    x_min: f64,
    meta: MetaDistribution,
}

impl ParetoMixture {
    pub fn new(x_min: f64, meta: MetaDistribution) -> Result<Self> {
        if !x_min.is_finite() || x_min <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "x_min",
                value: x_min,
                reason: "support lower bound must be finite and strictly positive",
            });
        }
        Ok(Self { x_min, meta })
    }

    /// Convenience constructor from parallel exponent/weight slices.
    pub fn from_parts(alphas: &[f64], phis: &[f64], x_min: f64) -> Result<Self> {
        if alphas.len() != phis.len() {
            return Err(Error::Config(format!(
                "got {} exponents but {} weights",
                alphas.len(),
                phis.len()
            )));
        }
        let states = alphas.iter().copied().zip(phis.iter().copied()).collect();
        Self::new(x_min, MetaDistribution::new(states)?)
    }

    /// Builds a mixture from weighted component laws, rejecting components
    /// whose support bounds differ.
    pub fn from_weighted_laws(components: &[(ParetoLaw, f64)]) -> Result<Self> {
        let Some(((first, _), rest)) = components.split_first() else {
            return Err(Error::Config("mixture needs at least one component".into()));
        };
        for (law, _) in rest {
            if law.x_min() != first.x_min() {
                return Err(Error::Config(format!(
                    "components must share one x_min; found {} and {}",
                    first.x_min(),
                    law.x_min()
                )));
            }
        }
        let states = components
            .iter()
            .map(|(law, phi)| (law.alpha(), *phi))
            .collect();
        Self::new(first.x_min(), MetaDistribution::new(states)?)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn meta(&self) -> &MetaDistribution {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.meta.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Plug-in exponent: the weighted mean `sum(phi_i * alpha_i)`.
    pub fn alpha_bar(&self) -> f64 {
        self.meta.mean_alpha()
    }

    /// Dominant exponent: the smallest `alpha_i`, which controls the far tail.
    pub fn alpha_star(&self) -> f64 {
        self.meta.min_alpha()
    }

    /// Component law for state `i` (states sorted by ascending exponent).
    pub fn component_law(&self, i: usize) -> ParetoLaw {
        let state = self.meta.states()[i];
        ParetoLaw::new(state.alpha, self.x_min).expect("validated at construction")
    }

    /// Single law using the plug-in exponent `alpha_bar`.
    pub fn mean_param_law(&self) -> ParetoLaw {
        ParetoLaw::new(self.alpha_bar(), self.x_min).expect("alpha_bar > 0")
    }

    /// Single law using the dominant exponent `alpha_star`.
    pub fn star_law(&self) -> ParetoLaw {
        ParetoLaw::new(self.alpha_star(), self.x_min).expect("alpha_star > 0")
    }

    fn check_support(&self, x: f64) -> Result<()> {
        if !x.is_finite() || x < self.x_min {
            return Err(Error::Domain(format!(
                "x = {x} lies outside the support [{}, inf)",
                self.x_min
            )));
        }
        Ok(())
    }

    /// Mixture density `sum(phi_i * pdf_i(x))`, accumulated in ascending
    /// exponent order.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        let mut acc = 0.0;
        for state in self.meta.states() {
            acc +=
                state.phi * state.alpha * self.x_min.powf(state.alpha) * x.powf(-state.alpha - 1.0);
        }
        Ok(acc)
    }

    /// Mixture survival `sum(phi_i * (x_min / x)^alpha_i)`.
    pub fn survival(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        let mut acc = 0.0;
        for state in self.meta.states() {
            acc += state.phi * (self.x_min / x).powf(state.alpha);
        }
        Ok(acc)
    }

    /// Draws one variate along with the index of the component that
    /// produced it.  Exactly two uniforms are consumed per draw, so the
    /// stream layout is stable.
    pub fn draw_labeled<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, f64) {
        let u: f64 = rng.random();
        let mut idx = self.meta.len() - 1;
        let mut cum = 0.0;
        for (i, state) in self.meta.states().iter().enumerate() {
            cum += state.phi;
            if u < cum {
                idx = i;
                break;
            }
        }
        let x = self.component_law(idx).draw(rng);
        (idx, x)
    }

    /// Draws `count` variates with component labels.
    pub fn sample_labeled<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<(usize, f64)> {
        (0..count).map(|_| self.draw_labeled(rng)).collect()
    }

    /// Draws `count` variates.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.draw_labeled(rng).1).collect()
    }
}
