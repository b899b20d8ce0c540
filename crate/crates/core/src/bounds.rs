use crate::instance::{class_loads, Instance, Variant};
use crate::rational::{big, Rational};

/// Simple bounds on the optimal makespan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Rational,
    pub upper: Rational,
}

/// Area bound, plus the largest job whenever a job cannot run in parallel.
///
/// The upper bound is the largest class load times the slot count for
/// splittable schedules and `n * p_max` otherwise.
pub fn lower_bound(instance: &Instance, variant: Variant) -> Bounds {
    let area = instance.total_time() / big(instance.machines());
    match variant {
        Variant::Splittable => {
            let biggest_class = class_loads(instance)
                .into_iter()
                .map(|l| l.total)
                .max()
                .expect("instances have jobs");
            Bounds {
                lower: area,
                upper: biggest_class * big(instance.slots() as u64),
            }
        }
        Variant::Preemptive | Variant::NonPreemptive => {
            let longest = instance.max_time();
            Bounds {
                upper: &longest * big(instance.job_count() as u64),
                lower: area.max(longest),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn area_bound_for_splittable() {
        let inst = Instance::from_integers(&[2, 2, 2], &[1, 1, 1], 3, 1).unwrap();
        let b = lower_bound(&inst, Variant::Splittable);
        assert_eq!(b.lower, int(2));
        assert!(b.upper >= b.lower);
    }

    #[test]
    fn longest_job_counts_without_splitting() {
        let inst = Instance::from_integers(&[9, 1], &[1, 2], 4, 1).unwrap();
        assert_eq!(lower_bound(&inst, Variant::Splittable).lower, int(10) / int(4));
        assert_eq!(lower_bound(&inst, Variant::Preemptive).lower, int(9));
        assert_eq!(lower_bound(&inst, Variant::NonPreemptive).upper, int(18));
    }
}
