//! Exact optima for tiny instances, used as ground truth in tests.

pub mod flow;
pub mod fractional;
pub mod nonpreemptive;
pub mod patterns;

use ccs_core::{Instance, Rational, Variant};
use thiserror::Error;

pub use fractional::{opt_preemptive, opt_preemptive_with, opt_splittable, opt_splittable_with};
pub use nonpreemptive::{opt_nonpreemptive, opt_nonpreemptive_with, OptimalAssignment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space too large: {what} exceed the cap of {cap}")]
    TooLarge { what: &'static str, cap: usize },
}

/// Size caps for the exhaustive searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `m^n` the assignment search accepts.
    pub assignments: u128,
    /// Largest number of slot patterns the fractional searches accept.
    pub patterns: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            assignments: 10_000_000,
            patterns: 1_000_000,
        }
    }
}

/// Optimal makespan for `variant`.
pub fn optimum(instance: &Instance, variant: Variant) -> Result<Rational, OracleError> {
    optimum_with(instance, variant, &OracleLimits::default())
}

pub fn optimum_with(
    instance: &Instance,
    variant: Variant,
    limits: &OracleLimits,
) -> Result<Rational, OracleError> {
    match variant {
        Variant::Splittable => opt_splittable_with(instance, limits),
        Variant::Preemptive => opt_preemptive_with(instance, limits),
        Variant::NonPreemptive => opt_nonpreemptive_with(instance, limits).map(|o| o.makespan),
    }
}
