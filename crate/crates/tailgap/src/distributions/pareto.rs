use rand::Rng;

use super::Expectation;
use crate::error::{Error, Result};

/// Pareto law with density `alpha * x_min^alpha * x^-(alpha+1)` on
/// `[x_min, inf)`.
///
/// `alpha` is the tail exponent: smaller values mean fatter tails.  The
/// first moment exists only for `alpha > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoLaw {
    alpha: f64,
    x_min: f64,
}

impl ParetoLaw {
    /// Builds a law after validating `alpha > 0` and `x_min > 0`, both finite.
    pub fn new(alpha: f64, x_min: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "tail exponent must be finite and strictly positive",
            });
        }
        if !x_min.is_finite() || x_min <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "x_min",
                value: x_min,
                reason: "support lower bound must be finite and strictly positive",
            });
        }
        Ok(Self { alpha, x_min })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
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

    /// Density at `x >= x_min`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(self.alpha * self.x_min.powf(self.alpha) * x.powf(-self.alpha - 1.0))
    }

    /// Survival function `P(X > x) = (x_min / x)^alpha` for `x >= x_min`.
    pub fn survival(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok((self.x_min / x).powf(self.alpha))
    }

    /// Quantile of the CDF: `x_min * (1 - u)^(-1/alpha)` for `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !u.is_finite() || !(0.0..1.0).contains(&u) {
            return Err(Error::Domain(format!(
                "quantile level u = {u} must lie in [0, 1)"
            )));
        }
        Ok(self.x_min * (1.0 - u).powf(-1.0 / self.alpha))
    }

    /// First moment: `alpha * x_min / (alpha - 1)` when `alpha > 1`,
    /// divergent otherwise.
    pub fn mean(&self) -> Expectation {
        if self.alpha > 1.0 {
            Expectation::Finite(self.alpha * self.x_min / (self.alpha - 1.0))
        } else {
            Expectation::Divergent
        }
    }

    /// Draws one variate by inverse transform.  `u` is in `[0, 1)`, so
    /// `1 - u` stays in `(0, 1]` and the result is finite.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        self.x_min * (1.0 - u).powf(-1.0 / self.alpha)
    }

    /// Draws `count` independent variates from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.draw(rng)).collect()
    }
}
