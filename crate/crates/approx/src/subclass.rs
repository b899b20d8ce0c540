//! Cutting classes into sub-classes of bounded load.

use ccs_core::rational::ceil_div;
use ccs_core::{class_loads, Instance, JobStream, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A consecutive segment of a class's job stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubClass {
    pub class: usize,
    /// Position of the segment within its class.
    pub index: usize,
    pub load: Rational,
    /// `(job, processing time)` segments in stream order.
    pub parts: Vec<(usize, Rational)>,
}

/// Number of sub-classes a class of load `total` is cut into at `threshold`.
pub fn sub_class_count(total: &Rational, threshold: &Rational) -> BigInt {
    if total <= threshold {
        BigInt::one()
    } else {
        ceil_div(total, threshold)
    }
}

/// Cuts the jobs of `class`, in ascending id order, at every multiple of
/// `threshold`. All segments but the last have load exactly `threshold`.
pub fn cut_class(instance: &Instance, class: usize, threshold: &Rational) -> Vec<SubClass> {
    let mut stream = JobStream::new(instance, instance.jobs_of_class(class));
    let mut out = Vec::new();
    while !stream.is_exhausted() {
        let parts = stream.take(threshold);
        let load = parts.iter().fold(Rational::zero(), |acc, (_, p)| acc + p);
        out.push(SubClass {
            class,
            index: out.len(),
            load,
            parts,
        });
    }
    out
}

fn total_count(loads: &[Rational], threshold: &Rational) -> BigInt {
    loads.iter().map(|p| sub_class_count(p, threshold)).sum()
}

/// Smallest threshold `T >= lower` at which cutting every class at `T`
/// yields at most `capacity` sub-classes.
///
/// The answer is either `lower` or one of the values `P_u / k`, so the search
/// narrows an interval of those values until none is left strictly inside.
pub fn border_search(instance: &Instance, lower: &Rational, capacity: &BigInt) -> Rational {
    let loads: Vec<Rational> = class_loads(instance).into_iter().map(|l| l.total).collect();
    if &total_count(&loads, lower) <= capacity {
        return lower.clone();
    }
    // f(lo) > capacity, f(hi) <= capacity.
    let mut lo = lower.clone();
    let mut hi = loads.iter().max().cloned().expect("instances have jobs");
    loop {
        // Per class, the k with lo < P/k < hi.
        let mut best: Option<(BigInt, usize, BigInt, BigInt)> = None;
        for (u, p) in loads.iter().enumerate() {
            let first = (p / &hi).floor().to_integer() + 1;
            let last = ceil_div(p, &lo) - 1;
            if last < first {
                continue;
            }
            let width = &last - &first + 1;
            if best.as_ref().map_or(true, |b| width > b.0) {
                best = Some((width, u, first, last));
            }
        }
        let Some((_, u, first, last)) = best else {
            return hi;
        };
        let k: BigInt = (first + last) / 2;
        let candidate = &loads[u] / Rational::from_integer(k);
        if &total_count(&loads, &candidate) <= capacity {
            hi = candidate;
        } else {
            lo = candidate;
        }
    }
}

/// Slot capacity `slots * machines` as an integer.
pub fn slot_capacity(instance: &Instance, machines: u64) -> BigInt {
    BigInt::from(instance.slots()) * BigInt::from(machines)
}

/// Fits a count that is known to be small into `usize`.
pub(crate) fn small(count: &BigInt) -> usize {
    debug_assert!(!count.is_negative());
    count.to_usize().expect("count fits in memory")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ccs_core::rational::{int, ratio};

    #[test]
    fn cut_produces_full_segments_then_remainder() {
        let inst = Instance::from_integers(&[3, 4, 2], &[1, 1, 1], 3, 1).unwrap();
        let subs = cut_class(&inst, 0, &int(4));
        let loads: Vec<Rational> = subs.iter().map(|s| s.load.clone()).collect();
        assert_eq!(loads, vec![int(4), int(4), int(1)]);
        assert_eq!(subs[0].parts, vec![(0, int(3)), (1, int(1))]);
        assert_eq!(subs[1].parts, vec![(1, int(3)), (2, int(1))]);
    }

    #[test]
    fn border_search_finds_smallest_breakpoint() {
        // loads 7 and 3, capacity 3: T = 7/2 gives 2 + 1 = 3 pieces.
        let inst = Instance::from_integers(&[7, 3], &[1, 2], 3, 1).unwrap();
        let t = border_search(&inst, &ratio(10, 3), &BigInt::from(3));
        assert_eq!(t, ratio(7, 2));
    }

    #[test]
    fn border_search_stays_at_lower_when_it_fits() {
        let inst = Instance::from_integers(&[6], &[1], 3, 1).unwrap();
        assert_eq!(border_search(&inst, &int(2), &BigInt::from(3)), int(2));
    }

    #[test]
    fn border_search_with_huge_machine_count() {
        let inst = Instance::from_integers(&[5, 5, 1], &[1, 2, 3], 1_000_000_000, 1).unwrap();
        let lower = ratio(11, 1_000_000_000);
        let cap = BigInt::from(1_000_000_000u64);
        let t = border_search(&inst, &lower, &cap);
        assert!(total_count(&[int(5), int(5), int(1)], &t) <= cap);
        assert!(t >= lower);
    }
}
