use ccs_core::{lower_bound, Instance, PreemptiveSchedule, Rational, Schedule, TimedPiece, Variant};
use num_traits::Zero;

use crate::splittable::{deal, sorted_sub_classes};
use crate::subclass::{border_search, slot_capacity};
use crate::ApproxOutcome;

/// Start times for items stacked bottom-up on each machine.
///
/// With `shift` set, everything above the bottom item of a machine is moved
/// up so that the second item starts at `threshold`.
pub fn stack_and_shift(loads: &[Vec<Rational>], threshold: &Rational, shift: bool) -> Vec<Vec<Rational>> {
    loads
        .iter()
        .map(|machine| {
            let mut starts = Vec::with_capacity(machine.len());
            let mut time = Rational::zero();
            for (i, load) in machine.iter().enumerate() {
                if shift && i == 1 && &time < threshold {
                    time = threshold.clone();
                }
                starts.push(time.clone());
                time += load;
            }
            starts
        })
        .collect()
}

/// 2-approximation for preemptive schedules.
///
/// Same cutting and dealing as the splittable algorithm on at most `n`
/// machines, followed by stacking each machine's sub-classes. When some
/// sub-class is as long as the threshold, the upper layers are moved above
/// the threshold so that no job runs on two machines at once.
pub fn approx_preemptive(instance: &Instance) -> ApproxOutcome {
    let machines = instance.useful_machines();
    let lower = lower_bound(instance, Variant::Preemptive).lower;
    let threshold = border_search(instance, &lower, &slot_capacity(instance, machines));
    let subs = sorted_sub_classes(instance, &threshold);
    let bins = deal(&subs, machines as usize);
    let loads: Vec<Vec<Rational>> = bins
        .iter()
        .map(|bin| bin.iter().map(|&s| subs[s].load.clone()).collect())
        .collect();
    let shift = subs.iter().any(|s| s.load == threshold);
    let starts = stack_and_shift(&loads, &threshold, shift);

    let mut pieces = Vec::new();
    for (machine, bin) in bins.iter().enumerate() {
        for (slot, &s) in bin.iter().enumerate() {
            let mut time = starts[machine][slot].clone();
            for (job, amount) in &subs[s].parts {
                pieces.push(TimedPiece {
                    job: *job,
                    machine: machine as u64,
                    fraction: amount / instance.time(*job),
                    start: time.clone(),
                });
                time += amount;
            }
        }
    }
    ApproxOutcome {
        schedule: Schedule::Preemptive(PreemptiveSchedule { pieces }),
        threshold,
        lower,
    }
}
