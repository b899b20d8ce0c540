//! Constant factor approximations: 2 for splittable and preemptive
//! schedules, 7/3 for non-preemptive ones.

pub mod nonpreemptive;
pub mod preemptive;
pub mod splittable;
pub mod subclass;

use ccs_core::{Instance, Rational, Schedule};

pub use nonpreemptive::{approx_nonpreemptive, sub_class_demand, SubClassDemand};
pub use preemptive::{approx_preemptive, stack_and_shift};
pub use splittable::approx_splittable;
pub use subclass::{border_search, cut_class, sub_class_count, SubClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub schedule: Schedule,
    /// Threshold the classes were cut at.
    pub threshold: Rational,
    /// Lower bound on the optimum for the variant.
    pub lower: Rational,
}

impl ApproxOutcome {
    pub fn makespan(&self, instance: &Instance) -> Rational {
        self.schedule
            .makespan(instance)
            .expect("approximation output references valid jobs")
    }
}

/// Runs the approximation for `variant`.
pub fn approximate(instance: &Instance, variant: ccs_core::Variant) -> ApproxOutcome {
    match variant {
        ccs_core::Variant::Splittable => approx_splittable(instance),
        ccs_core::Variant::Preemptive => approx_preemptive(instance),
        ccs_core::Variant::NonPreemptive => approx_nonpreemptive(instance),
    }
}
