use ccs_core::rational::{big, ceil_to_int, common_denominator, int};
use ccs_core::{
    lower_bound, lpt, round_robin, Instance, NonPreemptiveSchedule, Rational, Schedule, Variant,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::subclass::{slot_capacity, small};
use crate::ApproxOutcome;

/// How many sub-classes a class needs at a threshold, with the counts
/// behind the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubClassDemand {
    pub count: BigInt,
    /// `ceil(P / T)`.
    pub area: BigInt,
    /// Jobs longer than half the threshold.
    pub big: usize,
    /// Jobs in `(T/3, T/2]` that could not be paired with a long job.
    pub unpaired_medium: usize,
}

/// Sub-classes needed by one class so that each can be kept within the
/// threshold: enough for the area, and at least one per long job plus one per
/// two medium jobs that cannot share a machine with a long job.
///
/// Medium jobs are matched in non-ascending order (ties by lower id) to the
/// unpaired long job with the least room that still fits.
pub fn sub_class_demand(jobs: &[(usize, Rational)], threshold: &Rational) -> SubClassDemand {
    let total = jobs.iter().fold(Rational::zero(), |acc, (_, p)| acc + p);
    let area = ceil_to_int(&(total / threshold));
    let half = threshold / int(2);
    let third = threshold / int(3);

    let mut hosts: Vec<(Rational, usize, bool)> = jobs
        .iter()
        .filter(|(_, p)| p > &half)
        .map(|(id, p)| (threshold - p, *id, false))
        .collect();
    let mut mediums: Vec<&(usize, Rational)> = jobs
        .iter()
        .filter(|(_, p)| p > &third && p <= &half)
        .collect();
    mediums.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut unpaired: usize = 0;
    for (_, p) in mediums {
        let host = hosts
            .iter_mut()
            .filter(|(room, _, taken)| !taken && room >= p)
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        match host {
            Some(h) => h.2 = true,
            None => unpaired += 1,
        }
    }
    let big = hosts.len();
    let structural = BigInt::from(big + unpaired.div_ceil(2));
    SubClassDemand {
        count: area.clone().max(structural),
        area,
        big,
        unpaired_medium: unpaired,
    }
}

fn class_jobs(instance: &Instance) -> Vec<Vec<(usize, Rational)>> {
    instance
        .jobs_by_class()
        .into_iter()
        .map(|jobs| jobs.into_iter().map(|j| (j, instance.time(j).clone())).collect())
        .collect()
}

fn total_demand(classes: &[Vec<(usize, Rational)>], threshold: &Rational) -> BigInt {
    classes
        .iter()
        .map(|jobs| sub_class_demand(jobs, threshold).count)
        .sum()
}

/// 7/3-approximation for non-preemptive schedules.
///
/// The threshold is the smallest integer multiple of the common denominator
/// of the processing times at which the sub-class demands fit into the
/// slots. Each class is split over its sub-classes with LPT and the
/// sub-classes are dealt round robin.
pub fn approx_nonpreemptive(instance: &Instance) -> ApproxOutcome {
    let machines = instance.useful_machines();
    let lower = lower_bound(instance, Variant::NonPreemptive).lower;
    let scale = Rational::from_integer(common_denominator(instance.times()));
    let capacity = slot_capacity(instance, machines);
    let classes = class_jobs(instance);

    let fits = |t: &BigInt| {
        let threshold = Rational::from_integer(t.clone()) / &scale;
        total_demand(&classes, &threshold) <= capacity
    };
    let mut lo = ceil_to_int(&(&lower * &scale));
    let mut hi = ceil_to_int(&(instance.max_time() * big(instance.job_count() as u64) * &scale));
    debug_assert!(fits(&hi));
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if fits(&mid) {
            hi = mid;
        } else {
            lo = mid + BigInt::one();
        }
    }
    let threshold = Rational::from_integer(hi) / &scale;

    // Sub-classes as lists of jobs, in class order.
    let mut subs: Vec<(usize, Rational, Vec<usize>)> = Vec::new();
    for jobs in &classes {
        let count = small(&sub_class_demand(jobs, &threshold).count);
        for bin in lpt(jobs, count).expect("demand is positive") {
            let load = bin
                .iter()
                .fold(Rational::zero(), |acc, &j| acc + instance.time(j));
            subs.push((subs.len(), load, bin));
        }
    }
    let items: Vec<(usize, Rational)> = subs.iter().map(|(i, l, _)| (*i, l.clone())).collect();
    let bins = round_robin(&items, machines as usize).expect("at least one machine");
    let mut assignment = vec![0u64; instance.job_count()];
    for (machine, bin) in bins.iter().enumerate() {
        for &s in bin {
            for &job in &subs[s].2 {
                assignment[job] = machine as u64;
            }
        }
    }
    ApproxOutcome {
        schedule: Schedule::NonPreemptive(NonPreemptiveSchedule { assignment }),
        threshold,
        lower,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::ratio;

    fn jobs(times: &[i64]) -> Vec<(usize, Rational)> {
        times.iter().enumerate().map(|(i, &p)| (i, int(p))).collect()
    }

    #[test]
    fn demand_counts_unpaired_mediums() {
        // T = 12: 7 is long, the three 5s are medium; one pairs with 7.
        let d = sub_class_demand(&jobs(&[7, 5, 5, 5]), &int(12));
        assert_eq!(d.big, 1);
        assert_eq!(d.unpaired_medium, 2);
        assert_eq!(d.area, BigInt::from(2));
        assert_eq!(d.count, BigInt::from(2));
    }

    #[test]
    fn demand_pairs_mediums_with_hosts() {
        // T = 10: hosts 6 (room 4) and 11/2 (room 9/2) take 9/2 and 4.
        let d = sub_class_demand(
            &[(0, int(6)), (1, ratio(11, 2)), (2, ratio(9, 2)), (3, int(4))],
            &int(10),
        );
        assert_eq!(d.unpaired_medium, 0);
        assert_eq!(d.count, BigInt::from(2));
        let d = sub_class_demand(&[(0, int(7)), (1, int(6)), (2, int(4)), (3, int(4))], &int(10));
        assert_eq!(d.unpaired_medium, 1);
    }

    #[test]
    fn single_class_on_two_machines() {
        let inst = Instance::from_integers(&[7, 5, 5, 5], &[1, 1, 1, 1], 2, 1).unwrap();
        let out = approx_nonpreemptive(&inst);
        assert!(out.schedule.validate(&inst, Variant::NonPreemptive).is_feasible());
        assert_eq!(out.threshold, int(12));
        assert_eq!(out.makespan(&inst), int(12));
    }

    #[test]
    fn fractional_times_are_handled() {
        let inst = Instance::new(
            vec![ratio(1, 2), ratio(1, 3), ratio(5, 6)],
            vec![1, 2, 1],
            2,
            1,
        )
        .unwrap();
        let out = approx_nonpreemptive(&inst);
        assert!(out.schedule.validate(&inst, Variant::NonPreemptive).is_feasible());
        assert!(out.makespan(&inst) <= int(7) / int(3) * int(4) / int(3));
    }
}
