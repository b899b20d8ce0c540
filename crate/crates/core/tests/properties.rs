use ccs_core::rational::{int, ratio};
use ccs_core::{
    bin_loads, lower_bound, lpt, parse_instance, round_robin, write_instance, Instance,
    NonPreemptiveSchedule, Rational, Schedule, Variant,
};
use num_traits::Zero;
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Vec<(usize, Rational)>> {
    prop::collection::vec((1i64..50, 1i64..4), 0..40).prop_map(|ws| {
        ws.into_iter()
            .enumerate()
            .map(|(i, (num, den))| (i, ratio(num, den)))
            .collect()
    })
}

proptest! {
    #[test]
    fn round_robin_respects_load_bound(items in weights(), bins in 1usize..8) {
        let placed = round_robin(&items, bins).unwrap();
        let total = items.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        let largest = items.iter().map(|(_, w)| w.clone()).max().unwrap_or_else(Rational::zero);
        let bound = total / int(bins as i64) + largest;
        for load in bin_loads(&items, &placed) {
            prop_assert!(load <= bound);
        }
        let mut ids: Vec<usize> = placed.concat();
        ids.sort();
        prop_assert_eq!(ids, (0..items.len()).collect::<Vec<_>>());
    }

    #[test]
    fn round_robin_bin_sizes_differ_by_at_most_one(items in weights(), bins in 1usize..8) {
        let placed = round_robin(&items, bins).unwrap();
        let sizes: Vec<usize> = placed.iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn lpt_never_worse_than_round_robin_bound(items in weights(), bins in 1usize..8) {
        let placed = lpt(&items, bins).unwrap();
        let total = items.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        let largest = items.iter().map(|(_, w)| w.clone()).max().unwrap_or_else(Rational::zero);
        let bound = total / int(bins as i64) + largest;
        prop_assert!(bin_loads(&items, &placed).into_iter().all(|l| l <= bound));
    }

    #[test]
    fn text_format_round_trips(
        jobs in prop::collection::vec((1i64..30, 1i64..5, 0u64..6), 1..12),
        m in 1u64..5,
        c in 1usize..4,
    ) {
        let times = jobs.iter().map(|&(a, b, _)| ratio(a, b)).collect();
        let labels = jobs.iter().map(|&(_, _, l)| l).collect();
        if let Ok(inst) = Instance::new(times, labels, m, c) {
            prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn any_feasible_assignment_is_above_lower_bound(
        jobs in prop::collection::vec((1i64..20, 0u64..3), 1..8),
        m in 1u64..4,
        seed in any::<u64>(),
    ) {
        let times: Vec<i64> = jobs.iter().map(|j| j.0).collect();
        let labels: Vec<u64> = jobs.iter().map(|j| j.1).collect();
        let Ok(inst) = Instance::from_integers(&times, &labels, m, 3) else { return Ok(()) };
        let assignment = (0..inst.job_count())
            .map(|j| (seed.rotate_left(j as u32 * 7) ^ j as u64) % m)
            .collect();
        let schedule = Schedule::NonPreemptive(NonPreemptiveSchedule { assignment });
        if schedule.validate(&inst, Variant::NonPreemptive).is_feasible() {
            let makespan = schedule.makespan(&inst).unwrap();
            for v in Variant::ALL {
                prop_assert!(lower_bound(&inst, v).lower <= makespan);
                prop_assert!(schedule.validate(&inst, v).is_feasible());
            }
        }
    }
}
