use ccs_core::rational::common_denominator;
use ccs_core::{Instance, NonPreemptiveSchedule, Rational};
use num_traits::ToPrimitive;

use crate::{OracleError, OracleLimits};

/// An optimal non-preemptive schedule with its makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalAssignment {
    pub makespan: Rational,
    pub schedule: NonPreemptiveSchedule,
}

struct Search<'a> {
    times: &'a [i128],
    classes: &'a [usize],
    slots: usize,
    machines: usize,
    loads: Vec<i128>,
    /// Jobs of each class on each machine.
    hosted: Vec<Vec<usize>>,
    distinct: Vec<usize>,
    current: Vec<usize>,
    best: i128,
    best_assignment: Option<Vec<usize>>,
}

impl Search<'_> {
    /// Jobs are assigned in id order and machine ids are tried in increasing
    /// order, opening at most one new machine per step, so the first optimum
    /// found is the lexicographically smallest one.
    fn run(&mut self, job: usize, opened: usize) {
        if job == self.times.len() {
            let makespan = self.loads.iter().copied().max().unwrap_or(0);
            if makespan < self.best {
                self.best = makespan;
                self.best_assignment = Some(self.current.clone());
            }
            return;
        }
        let class = self.classes[job];
        let limit = (opened + 1).min(self.machines);
        for machine in 0..limit {
            let load = self.loads[machine] + self.times[job];
            if load >= self.best {
                continue;
            }
            let new_class = self.hosted[machine][class] == 0;
            if new_class && self.distinct[machine] == self.slots {
                continue;
            }
            self.loads[machine] = load;
            self.hosted[machine][class] += 1;
            if new_class {
                self.distinct[machine] += 1;
            }
            self.current.push(machine);
            self.run(job + 1, opened.max(machine + 1));
            self.current.pop();
            if new_class {
                self.distinct[machine] -= 1;
            }
            self.hosted[machine][class] -= 1;
            self.loads[machine] -= self.times[job];
        }
    }
}

pub fn opt_nonpreemptive_with(
    instance: &Instance,
    limits: &OracleLimits,
) -> Result<OptimalAssignment, OracleError> {
    let machines = instance.useful_machines() as usize;
    let space = (machines as u128).checked_pow(instance.job_count() as u32);
    if space.map_or(true, |s| s > limits.assignments) {
        return Err(OracleError::TooLarge {
            what: "job assignments",
            cap: limits.assignments.min(usize::MAX as u128) as usize,
        });
    }
    let scale = Rational::from_integer(common_denominator(instance.times()));
    let times: Vec<i128> = instance
        .times()
        .iter()
        .map(|p| (p * &scale).to_integer().to_i128())
        .collect::<Option<_>>()
        .ok_or(OracleError::TooLarge {
            what: "processing times",
            cap: 0,
        })?;
    let total: i128 = times.iter().sum();
    let mut search = Search {
        times: &times,
        classes: instance.classes(),
        slots: instance.slots(),
        machines,
        loads: vec![0; machines],
        hosted: vec![vec![0; instance.class_count()]; machines],
        distinct: vec![0; machines],
        current: Vec::with_capacity(times.len()),
        best: total + 1,
        best_assignment: None,
    };
    search.run(0, 0);
    let assignment = search
        .best_assignment
        .expect("valid instances have a feasible assignment");
    Ok(OptimalAssignment {
        makespan: Rational::from_integer(search.best.into()) / scale,
        schedule: NonPreemptiveSchedule {
            assignment: assignment.into_iter().map(|m| m as u64).collect(),
        },
    })
}

pub fn opt_nonpreemptive(instance: &Instance) -> Result<OptimalAssignment, OracleError> {
    opt_nonpreemptive_with(instance, &OracleLimits::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::int;
    use ccs_core::{Schedule, Variant};

    #[test]
    fn one_job_per_machine() {
        let inst = Instance::from_integers(&[2, 2, 2], &[1, 2, 3], 3, 1).unwrap();
        let opt = opt_nonpreemptive(&inst).unwrap();
        assert_eq!(opt.makespan, int(2));
        assert_eq!(opt.schedule.assignment, vec![0, 1, 2]);
    }

    #[test]
    fn single_class_two_machines() {
        // Every split of {7,5,5,5} into two groups: best is {7,5} | {5,5}.
        let inst = Instance::from_integers(&[7, 5, 5, 5], &[1, 1, 1, 1], 2, 1).unwrap();
        let opt = opt_nonpreemptive(&inst).unwrap();
        assert_eq!(opt.makespan, int(12));
        assert_eq!(opt.schedule.assignment, vec![0, 0, 1, 1]);
        let s = Schedule::NonPreemptive(opt.schedule);
        assert!(s.validate(&inst, Variant::NonPreemptive).is_feasible());
    }

    #[test]
    fn slots_are_respected() {
        let inst = Instance::from_integers(&[1, 1, 10], &[1, 2, 3], 2, 2).unwrap();
        let opt = opt_nonpreemptive(&inst).unwrap();
        assert_eq!(opt.makespan, int(10));
        let s = Schedule::NonPreemptive(opt.schedule);
        assert!(s.validate(&inst, Variant::NonPreemptive).is_feasible());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::from_integers(&[1; 12], &[1; 12], 6, 1).unwrap();
        let limits = OracleLimits {
            assignments: 1000,
            ..OracleLimits::default()
        };
        assert!(opt_nonpreemptive_with(&inst, &limits).is_err());
    }
}
