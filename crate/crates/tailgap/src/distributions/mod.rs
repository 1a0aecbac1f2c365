//! Probability laws used throughout the crate: single Pareto laws, discrete
//! metadistributions over the tail exponent, the induced Pareto mixtures,
//! discretization of continuous exponent families, and alpha-stable
//! variate generation for benchmark studies.

mod meta_spec;
mod mixture;
mod pareto;
mod stable;

pub use meta_spec::{ContinuousMetaSpec, MetaFamily};
pub use mixture::{MetaDistribution, MetaState, ParetoMixture};
pub use pareto::ParetoLaw;
pub use stable::StableParams;

/// Value of an expectation that may fail to exist.
///
/// Pareto moments diverge once the integrand grows at least as fast as the
/// tail decays; callers must not fold `Divergent` into arithmetic silently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    Finite(f64),
    Divergent,
}

impl Expectation {
    /// Returns the finite value, panicking on divergence.  Intended for
    /// contexts that have already checked existence.
    pub fn expect_finite(self, context: &str) -> f64 {
        match self {
            Expectation::Finite(v) => v,
            Expectation::Divergent => panic!("expectation diverges: {context}"),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Expectation::Finite(_))
    }
}
