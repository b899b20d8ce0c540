use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::CoreError;
use crate::rational::{int, sum_of, Rational};

/// Which relaxation of job splitting a schedule is allowed to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Pieces of a job may run in parallel on different machines.
    Splittable,
    /// Pieces may be spread over machines but never run at the same time.
    Preemptive,
    /// Every job runs uninterrupted on a single machine.
    NonPreemptive,
}

impl Variant {
    pub const ALL: [Variant; 3] = [
        Variant::Splittable,
        Variant::Preemptive,
        Variant::NonPreemptive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Splittable => "split",
            Variant::Preemptive => "preempt",
            Variant::NonPreemptive => "nonpreempt",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" | "splittable" => Ok(Variant::Splittable),
            "preempt" | "preemptive" => Ok(Variant::Preemptive),
            "nonpreempt" | "non-preemptive" | "nonpreemptive" => Ok(Variant::NonPreemptive),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

/// A scheduling instance with classes re-indexed densely from zero.
///
/// The slot count is clamped to the number of classes, which never changes
/// the set of feasible schedules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    times: Vec<Rational>,
    classes: Vec<usize>,
    labels: Vec<u64>,
    machines: u64,
    slots: usize,
    requested_slots: usize,
}

impl Instance {
    pub fn new(
        times: Vec<Rational>,
        class_labels: Vec<u64>,
        machines: u64,
        slots: usize,
    ) -> Result<Self, CoreError> {
        if times.is_empty() {
            return Err(CoreError::NoJobs);
        }
        if times.len() != class_labels.len() {
            return Err(CoreError::LengthMismatch {
                times: times.len(),
                classes: class_labels.len(),
            });
        }
        if machines == 0 {
            return Err(CoreError::NoMachines);
        }
        if slots == 0 {
            return Err(CoreError::NoSlots);
        }
        if let Some(job) = times.iter().position(|p| !p.is_positive()) {
            return Err(CoreError::NonPositiveTime { job });
        }
        let labels: Vec<u64> = class_labels
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let classes = class_labels
            .iter()
            .map(|l| labels.binary_search(l).expect("label collected above"))
            .collect();
        let class_count = labels.len();
        if (class_count as u128) > machines as u128 * slots as u128 {
            return Err(CoreError::NotEnoughSlots {
                classes: class_count,
                machines,
                slots,
            });
        }
        Ok(Instance {
            times,
            classes,
            labels,
            machines,
            slots: slots.min(class_count),
            requested_slots: slots,
        })
    }

    /// Convenience constructor for integral processing times.
    pub fn from_integers(
        times: &[i64],
        class_labels: &[u64],
        machines: u64,
        slots: usize,
    ) -> Result<Self, CoreError> {
        Self::new(
            times.iter().map(|&p| int(p)).collect(),
            class_labels.to_vec(),
            machines,
            slots,
        )
    }

    /// The same jobs on a different number of machines.
    pub fn with_machines(&self, machines: u64) -> Result<Self, CoreError> {
        Self::new(
            self.times.clone(),
            self.classes.iter().map(|&u| self.labels[u]).collect(),
            machines,
            self.requested_slots,
        )
    }

    pub fn job_count(&self) -> usize {
        self.times.len()
    }

    pub fn class_count(&self) -> usize {
        self.labels.len()
    }

    pub fn machines(&self) -> u64 {
        self.machines
    }

    /// Effective slots per machine, at most the number of classes.
    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Slots per machine as given, before clamping.
    pub fn requested_slots(&self) -> usize {
        self.requested_slots
    }

    pub fn time(&self, job: usize) -> &Rational {
        &self.times[job]
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    pub fn class_of(&self, job: usize) -> usize {
        self.classes[job]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// Original label of a dense class id.
    pub fn class_label(&self, class: usize) -> u64 {
        self.labels[class]
    }

    /// Jobs of one class in ascending id order.
    pub fn jobs_of_class(&self, class: usize) -> Vec<usize> {
        (0..self.job_count())
            .filter(|&j| self.classes[j] == class)
            .collect()
    }

    /// Jobs grouped by class, each group in ascending id order.
    pub fn jobs_by_class(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.class_count()];
        for (job, &class) in self.classes.iter().enumerate() {
            groups[class].push(job);
        }
        groups
    }

    pub fn total_time(&self) -> Rational {
        sum_of(&self.times)
    }

    pub fn max_time(&self) -> Rational {
        self.times.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// Machines that can ever be useful when jobs are not split in parallel.
    pub fn useful_machines(&self) -> u64 {
        self.machines.min(self.job_count() as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLoad {
    pub class: usize,
    pub total: Rational,
}

/// Total processing time of every class, in class order.
pub fn class_loads(instance: &Instance) -> Vec<ClassLoad> {
    let mut totals = vec![Rational::zero(); instance.class_count()];
    for (job, p) in instance.times().iter().enumerate() {
        totals[instance.class_of(job)] += p;
    }
    totals
        .into_iter()
        .enumerate()
        .map(|(class, total)| ClassLoad { class, total })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_reindexed_by_label_order() {
        let inst = Instance::from_integers(&[1, 2, 3, 4], &[9, 3, 9, 40], 2, 5).unwrap();
        assert_eq!(inst.classes(), &[1, 0, 1, 2]);
        assert_eq!(inst.class_label(0), 3);
        assert_eq!(inst.class_label(2), 40);
        assert_eq!(inst.slots(), 3);
        assert_eq!(inst.requested_slots(), 5);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(
            Instance::from_integers(&[], &[], 1, 1),
            Err(CoreError::NoJobs)
        );
        assert_eq!(
            Instance::from_integers(&[1], &[1], 0, 1),
            Err(CoreError::NoMachines)
        );
        assert_eq!(
            Instance::from_integers(&[0], &[1], 1, 1),
            Err(CoreError::NonPositiveTime { job: 0 })
        );
        assert!(matches!(
            Instance::from_integers(&[1, 1, 1], &[1, 2, 3], 1, 2),
            Err(CoreError::NotEnoughSlots { classes: 3, .. })
        ));
    }

    #[test]
    fn class_loads_sum_per_class() {
        let inst = Instance::from_integers(&[1, 2, 3, 4], &[1, 2, 1, 2], 2, 1).unwrap();
        let loads = class_loads(&inst);
        assert_eq!(loads[0].total, int(4));
        assert_eq!(loads[1].total, int(6));
    }

    #[test]
    fn variant_names_parse_back() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
    }
}
