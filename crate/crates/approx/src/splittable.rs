use std::collections::BTreeMap;

use ccs_core::rational::{big, floor_to_int, to_u64};
use ccs_core::{
    class_loads, lower_bound, round_robin, CompactSchedule, Instance, JobStream, Rational,
    Schedule, SplittableSchedule, Variant,
};
use num_traits::Signed;

use crate::subclass::{border_search, cut_class, slot_capacity, SubClass};
use crate::ApproxOutcome;

/// Sub-classes of every class, sorted the way round robin consumes them:
/// non-ascending load, ties by class and then position in the class.
pub(crate) fn sorted_sub_classes(instance: &Instance, threshold: &Rational) -> Vec<SubClass> {
    let mut subs: Vec<SubClass> = (0..instance.class_count())
        .flat_map(|u| cut_class(instance, u, threshold))
        .collect();
    subs.sort_by(|a, b| {
        b.load
            .cmp(&a.load)
            .then(a.class.cmp(&b.class))
            .then(a.index.cmp(&b.index))
    });
    subs
}

/// Deals sorted sub-classes round robin over `machines` machines.
pub(crate) fn deal(subs: &[SubClass], machines: usize) -> Vec<Vec<usize>> {
    let items: Vec<(usize, Rational)> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.load.clone()))
        .collect();
    round_robin(&items, machines).expect("at least one machine")
}

/// 2-approximation for splittable schedules.
///
/// Classes are cut at the smallest threshold for which all pieces fit into
/// the slots, and the pieces are dealt round robin. With more machines than
/// jobs the result is compact.
pub fn approx_splittable(instance: &Instance) -> ApproxOutcome {
    let lower = lower_bound(instance, Variant::Splittable).lower;
    let threshold = border_search(instance, &lower, &slot_capacity(instance, instance.machines()));
    let schedule = if instance.machines() <= instance.job_count() as u64 {
        Schedule::Splittable(explicit(instance, &sorted_sub_classes(instance, &threshold)))
    } else {
        Schedule::Compact(compact(instance, &threshold))
    };
    ApproxOutcome {
        schedule,
        threshold,
        lower,
    }
}

fn explicit(instance: &Instance, subs: &[SubClass]) -> SplittableSchedule {
    let bins = deal(subs, instance.machines() as usize);
    let amounts = bins.iter().enumerate().flat_map(|(machine, bin)| {
        bin.iter().flat_map(move |&s| {
            subs[s]
                .parts
                .iter()
                .map(move |(job, amount)| (*job, machine as u64, amount.clone()))
        })
    });
    SplittableSchedule::from_amounts(instance, amounts)
}

/// Round robin over more machines than jobs without listing every machine.
///
/// Full sub-classes come first in the dealing order, so machine `i` gets
/// position `i` and, once the positions wrap, position `i + m`. Only
/// machines that receive a partial sub-class or two sub-classes are kept
/// explicit; full segments are interchangeable, so the segments consumed by
/// trivial machines can be taken from the front of each class.
fn compact(instance: &Instance, threshold: &Rational) -> CompactSchedule {
    let m = instance.machines();
    let loads: Vec<Rational> = class_loads(instance).into_iter().map(|l| l.total).collect();
    let fulls: Vec<u64> = loads
        .iter()
        .map(|p| to_u64(&floor_to_int(&(p / threshold))).expect("at most m full segments"))
        .collect();
    let full_total: u64 = fulls.iter().sum();
    let mut partial: Vec<(usize, Rational)> = loads
        .iter()
        .zip(&fulls)
        .enumerate()
        .map(|(u, (p, &f))| (u, p - threshold * big(f)))
        .filter(|(_, r)| r.is_positive())
        .collect();
    partial.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let positions = full_total..full_total + partial.len() as u64;
    let mut explicit_bins: Vec<u64> = positions.clone().map(|pos| pos % m).collect();
    explicit_bins.sort_unstable();
    explicit_bins.dedup();
    let renumber: BTreeMap<u64, u64> = explicit_bins
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i as u64))
        .collect();

    // Full segments at positions below `wrapped` share their machine with a
    // partial one.
    let wrapped = positions.end.saturating_sub(m);
    let mut explicit_full: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut start = 0u64;
    for (class, &f) in fulls.iter().enumerate() {
        for pos in start..(start + f).min(wrapped) {
            explicit_full.entry(class).or_default().push(renumber[&pos]);
        }
        start += f;
    }
    let partial_machine: BTreeMap<usize, u64> = partial
        .iter()
        .zip(positions)
        .map(|((class, _), pos)| (*class, renumber[&(pos % m)]))
        .collect();

    let mut trivial = BTreeMap::new();
    let mut amounts = Vec::new();
    for (class, &f) in fulls.iter().enumerate() {
        let on_explicit = explicit_full.remove(&class).unwrap_or_default();
        let trivial_count = f - on_explicit.len() as u64;
        let mut stream = JobStream::new(instance, instance.jobs_of_class(class));
        if trivial_count > 0 {
            stream.take(&(threshold * big(trivial_count)));
            trivial.insert(class, trivial_count);
        }
        for machine in on_explicit {
            amounts.extend(
                stream
                    .take(threshold)
                    .into_iter()
                    .map(|(job, a)| (job, machine, a)),
            );
        }
        if let Some(&machine) = partial_machine.get(&class) {
            amounts.extend(stream.take_rest().into_iter().map(|(job, a)| (job, machine, a)));
        }
    }
    CompactSchedule {
        explicit: SplittableSchedule::from_amounts(instance, amounts),
        explicit_machines: explicit_bins.len() as u64,
        trivial_piece: threshold.clone(),
        trivial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::{int, ratio};

    #[test]
    fn single_job_spread_over_machines() {
        let inst = Instance::from_integers(&[6], &[1], 3, 1).unwrap();
        let out = approx_splittable(&inst);
        assert!(out.schedule.validate(&inst, Variant::Splittable).is_feasible());
        assert_eq!(out.makespan(&inst), int(2));
    }

    #[test]
    fn two_classes_one_slot() {
        let inst = Instance::from_integers(&[4, 4, 2], &[1, 1, 2], 2, 1).unwrap();
        let out = approx_splittable(&inst);
        assert!(out.schedule.validate(&inst, Variant::Splittable).is_feasible());
        assert!(out.makespan(&inst) <= int(2) * &out.lower * int(2));
    }

    #[test]
    fn many_machines_give_compact_output() {
        let inst = Instance::from_integers(&[6, 3], &[1, 2], 1_000_000_000, 1).unwrap();
        let out = approx_splittable(&inst);
        let Schedule::Compact(compact) = &out.schedule else {
            panic!("expected compact schedule")
        };
        assert!(compact.explicit_machines <= 2);
        assert!(out.schedule.validate(&inst, Variant::Splittable).is_feasible());
        assert_eq!(out.makespan(&inst), out.threshold);
        assert!(out.threshold > ratio(9, 1_000_000_000));
        assert!(out.makespan(&inst) <= int(2) * &out.lower);
    }

    #[test]
    fn compact_matches_explicit_on_moderate_counts() {
        let inst = Instance::from_integers(&[5, 4, 2, 7], &[1, 2, 2, 3], 9, 2).unwrap();
        let out = approx_splittable(&inst);
        let Schedule::Compact(compact) = &out.schedule else {
            panic!("expected compact schedule")
        };
        let expanded = Schedule::Splittable(compact.expand(&inst));
        assert!(expanded.validate(&inst, Variant::Splittable).is_feasible());
        assert_eq!(expanded.makespan(&inst).unwrap(), out.makespan(&inst));
        let subs = sorted_sub_classes(&inst, &out.threshold);
        let reference = Schedule::Splittable(explicit(&inst, &subs));
        assert_eq!(reference.makespan(&inst).unwrap(), out.makespan(&inst));
    }
}
